from .bio import (
    LabelSequence,
    SnapNote,
    Span,
    TruncationNote,
    decode_bio,
    encode_bio,
    encode_document,
    paragraph_texts,
    truncate_for_model,
)
from .segment import segment
from .tokenize import Token, tokenize

__all__ = [
    "LabelSequence",
    "SnapNote",
    "Span",
    "Token",
    "TruncationNote",
    "decode_bio",
    "encode_bio",
    "encode_document",
    "paragraph_texts",
    "segment",
    "tokenize",
    "truncate_for_model",
]
