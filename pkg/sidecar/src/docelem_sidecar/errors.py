class SidecarError(Exception):
    """Base for everything this package raises on purpose."""


class EmptyTrainingSet(SidecarError):
    pass


class LabelAlphabetMismatch(SidecarError):
    pass


class MalformedItem(SidecarError):
    pass


class UnknownModel(SidecarError):
    pass


class UnknownEncoder(SidecarError):
    pass
