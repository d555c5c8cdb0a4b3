"""BIO label codec over canonical tokens.

Encoding maps character spans onto token labels; decoding recovers
character spans from labels. Two conventions are fixed here:

* Gold spans that straddle a token boundary snap *outward* to whole
  tokens (recall-preserving); every snap is reported to the caller.
* Decoding is lenient: a stray ``I-t`` with no open span of type ``t``
  opens a new span, and a type change closes the previous run. Model
  output therefore always decodes without errors.

A single label sequence can carry at most one type per token, so spans of
*different* types competing for a token are resolved greedily (earlier
start wins, then longer span); the losing span is dropped and reported
alongside the snap notes. Same-type overlap is a hard error because BIO
cannot represent it at all.
"""

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Iterable, Sequence

from docelem.errors import OverlappingSameTypeSpans

from .segment import segment as _segment
from .tokenize import Token, tokenize

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Annotation, Document

Span = tuple[int, int, str]


@dataclass(frozen=True)
class LabelSequence:
    paragraph_ref: tuple[str, int]
    tokens: tuple[Token, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.labels):
            raise ValueError(
                f"{len(self.labels)} labels for {len(self.tokens)} tokens "
                f"in paragraph {self.paragraph_ref}"
            )


@dataclass(frozen=True)
class SnapNote:
    """A span adjusted (or dropped) while being forced onto token boundaries."""

    original: Span
    snapped: Span | None  # None when the span was dropped (cross-type conflict)


@dataclass(frozen=True)
class TruncationNote:
    """A decoded span that extends past the model-window cut."""

    paragraph_ref: tuple[str, int]
    span: Span


def encode_bio(
    tokens: Sequence[Token],
    spans: Iterable[Span],
    paragraph_ref: tuple[str, int] = ("", 0),
) -> tuple[LabelSequence, list[SnapNote]]:
    """Encode character *spans* over *tokens* as one BIO label sequence.

    Spans are (start, end, element_type_id) in paragraph-local character
    offsets. Raises OverlappingSameTypeSpans when two spans of one type
    overlap, either as given or after snapping outward to token boundaries.
    """
    labels = ["O"] * len(tokens)
    notes: list[SnapNote] = []
    ordered = sorted(spans, key=lambda s: (s[0], s[0] - s[1], s[2]))

    for a, b in zip(ordered, ordered[1:]):
        if a[2] == b[2] and b[0] < a[1]:
            raise OverlappingSameTypeSpans(f"spans {a} and {b} overlap")

    claimed: dict[int, str] = {}
    for start, end, etype in ordered:
        if start >= end:
            raise ValueError(f"empty span ({start}, {end}, {etype})")
        idxs = [
            i for i, tok in enumerate(tokens) if tok.start < end and tok.end > start
        ]
        if not idxs:
            notes.append(SnapNote((start, end, etype), None))
            continue
        lo, hi = idxs[0], idxs[-1]
        conflict = next((i for i in range(lo, hi + 1) if i in claimed), None)
        if conflict is not None:
            if claimed[conflict] == etype:
                raise OverlappingSameTypeSpans(
                    f"span ({start}, {end}, {etype}) overlaps an earlier "
                    f"{etype} span after snapping to token boundaries"
                )
            notes.append(SnapNote((start, end, etype), None))
            continue
        snapped = (tokens[lo].start, tokens[hi].end, etype)
        if snapped != (start, end, etype):
            notes.append(SnapNote((start, end, etype), snapped))
        labels[lo] = f"B-{etype}"
        for i in range(lo + 1, hi + 1):
            labels[i] = f"I-{etype}"
        for i in range(lo, hi + 1):
            claimed[i] = etype

    return LabelSequence(paragraph_ref, tuple(tokens), tuple(labels)), notes


def decode_bio(sequence: LabelSequence) -> list[Span]:
    """Decode a label sequence into character spans, leniently.

    Output spans are sorted by start and never overlap (per type or
    across types), since each token carries a single label.
    """
    spans: list[Span] = []
    open_type: str | None = None
    first = last = -1

    def close():
        nonlocal open_type
        if open_type is not None:
            spans.append(
                (sequence.tokens[first].start, sequence.tokens[last].end, open_type)
            )
            open_type = None

    for i, label in enumerate(sequence.labels):
        if label == "O":
            close()
        elif label.startswith("B-"):
            close()
            open_type, first, last = label[2:], i, i
        elif label.startswith("I-"):
            etype = label[2:]
            if etype == open_type:
                last = i
            else:
                close()
                open_type, first, last = etype, i, i
        else:
            raise ValueError(f"malformed BIO label {label!r}")
    close()
    return spans


def truncate_for_model(
    sequence: LabelSequence, max_tokens: int
) -> tuple[LabelSequence, list[TruncationNote]]:
    """Cut a sequence to the first ``max_tokens - 2`` tokens.

    Two positions are reserved for the sequence markers the model side
    frames inputs with. Spans extending past the cut are reported; the
    cut itself is deterministic.
    """
    if max_tokens < 3:
        raise ValueError("max_tokens must be at least 3")
    keep = max_tokens - 2
    if len(sequence.tokens) <= keep:
        return sequence, []
    cut_offset = sequence.tokens[keep - 1].end
    notes = [
        TruncationNote(sequence.paragraph_ref, span)
        for span in decode_bio(sequence)
        if span[1] > cut_offset
    ]
    truncated = replace(
        sequence, tokens=sequence.tokens[:keep], labels=sequence.labels[:keep]
    )
    return truncated, notes


def encode_document(
    document: "Document", annotations: Iterable["Annotation"]
) -> list[tuple[LabelSequence, list[SnapNote]]]:
    """Encode every paragraph of *document* against its gold annotations.

    Annotations are given in document offsets and projected into each
    paragraph; one (sequence, snap notes) pair is returned per paragraph,
    in paragraph order.
    """
    anns = list(annotations)
    out = []
    for index, (p_start, p_end) in enumerate(document.paragraphs):
        local = [
            (a.start - p_start, a.end - p_start, a.element_type_id)
            for a in anns
            if a.start >= p_start and a.end <= p_end
        ]
        tokens = tokenize(document.text[p_start:p_end])
        out.append(encode_bio(tokens, local, (document.doc_id, index)))
    return out


def paragraph_texts(text: str) -> list[str]:
    """Paragraph surfaces of *text*, in order."""
    return [text[s:e] for s, e in _segment(text)]
