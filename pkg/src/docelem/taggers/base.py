"""Shared tagging interface: paragraph items in, label sequences out."""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Protocol, Sequence, runtime_checkable

from docelem.textprep import LabelSequence, Token, tokenize

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Document


@dataclass(frozen=True)
class ParagraphItem:
    doc_id: str
    paragraph_index: int
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError(
                f"empty token list for {self.doc_id!r}[{self.paragraph_index}]"
            )


@dataclass(frozen=True)
class LabeledItem:
    doc_id: str
    paragraph_index: int
    labels: tuple[str, ...]


@dataclass(frozen=True)
class TaggerRequest:
    request_id: str
    items: tuple[ParagraphItem, ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("request with no items")


@dataclass(frozen=True)
class TaggerResponse:
    request_id: str
    items: tuple[LabeledItem, ...]


@runtime_checkable
class Tagger(Protocol):
    def tag(self, items: Sequence[ParagraphItem]) -> list[LabelSequence]:
        """One complete BIO label sequence per input paragraph, same order."""
        ...


def paragraph_items(document: "Document") -> list[ParagraphItem]:
    """Tokenized paragraph items for every paragraph of *document*.

    Paragraphs hold at least one non-whitespace character by construction,
    so every item carries at least one token.
    """
    return [
        ParagraphItem(document.doc_id, i, tuple(tokenize(document.paragraph_text(i))))
        for i in range(len(document.paragraphs))
    ]


def paragraph_surface(item: ParagraphItem) -> str:
    """Paragraph text rebuilt from tokens.

    Gaps between tokens were whitespace in the source and come back as
    plain spaces; offsets are preserved exactly, which is what pattern
    matching against the item needs.
    """
    length = item.tokens[-1].end
    buf = [" "] * length
    for tok in item.tokens:
        buf[tok.start:tok.end] = tok.text
    return "".join(buf)
