"""Character-level transformer tagger behind the tag/train wire protocol."""

from .errors import (
    EmptyTrainingSet,
    LabelAlphabetMismatch,
    MalformedItem,
    SidecarError,
    UnknownEncoder,
    UnknownModel,
)
from .framing import Frame, frame_item, label_alphabet, masked_loss
from .model import ClassifierHead, TinyEncoder, TokenTagger, build_model
from .registry import ModelRegistry, TaggingRuntime
from .serve import create_app
from .train import TrainConfig, TrainedModel, train_model
from .vocab import Vocab

__all__ = [
    "ClassifierHead",
    "EmptyTrainingSet",
    "Frame",
    "LabelAlphabetMismatch",
    "MalformedItem",
    "ModelRegistry",
    "SidecarError",
    "TaggingRuntime",
    "TinyEncoder",
    "TokenTagger",
    "TrainConfig",
    "TrainedModel",
    "UnknownEncoder",
    "UnknownModel",
    "Vocab",
    "build_model",
    "create_app",
    "frame_item",
    "label_alphabet",
    "masked_loss",
    "train_model",
]
