"""Exception hierarchy shared across the toolkit."""


class DocelemError(Exception):
    """Base class for all toolkit errors."""


# -- corpus ------------------------------------------------------------------


class EmptyCorpus(DocelemError):
    pass


class AllZeroRatios(DocelemError):
    pass


class UnknownPlaceholder(DocelemError):
    pass


class UnknownFillerKind(DocelemError):
    pass


class IoFailure(DocelemError):
    pass


class SchemaMismatch(DocelemError):
    pass


# -- text preparation --------------------------------------------------------


class OverlappingSameTypeSpans(DocelemError):
    pass


# -- taggers -----------------------------------------------------------------


class BackendUnavailable(DocelemError):
    pass


class MalformedResponse(DocelemError):
    def __init__(self, request_id: str, detail: str):
        super().__init__(f"request {request_id}: {detail}")
        self.request_id = request_id
        self.detail = detail


# -- evaluation --------------------------------------------------------------


class DocIdMismatch(DocelemError):
    pass


class EmptySubset(DocelemError):
    pass


# -- normalization -----------------------------------------------------------


class UnparseableDate(DocelemError):
    pass


class InvalidCalendarDate(DocelemError):
    pass


class UnparseableNumber(DocelemError):
    pass


class EndBeforeStart(DocelemError):
    pass


# -- ablation ----------------------------------------------------------------


class SubsetTooLarge(DocelemError):
    pass


# -- service -----------------------------------------------------------------


class UnknownDocument(DocelemError):
    pass


class UnknownModel(DocelemError):
    pass


class UnknownElementType(DocelemError):
    pass


class SpanOutOfRange(DocelemError):
    pass


class OverlapConflict(DocelemError):
    pass


class UnsupportedMediaType(DocelemError):
    pass


class EmptyDocument(DocelemError):
    pass


class ConcurrentJobConflict(DocelemError):
    pass
