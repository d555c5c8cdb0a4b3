"""Document-level entity extraction on top of any tagger."""

from typing import TYPE_CHECKING, Sequence

from docelem.errors import SchemaMismatch
from docelem.evaluation import EntitySet
from docelem.textprep import LabelSequence, Span, decode_bio

from .base import Tagger, paragraph_items

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Corpus, Document, Schema


def extract_spans(sequence: LabelSequence) -> list[Span]:
    """Character spans decoded from one labeled paragraph."""
    return decode_bio(sequence)


def extract_highlights(document: "Document", tagger: Tagger) -> list[dict]:
    """Predicted spans in document offsets, surfaces kept verbatim.

    Each entry is {element_type_id, start, end, surface} with
    surface == document.text[start:end], untouched for display purposes.
    """
    items = paragraph_items(document)
    highlights = []
    for item, sequence in zip(items, tagger.tag(items)):
        p_start = document.paragraphs[item.paragraph_index][0]
        for start, end, etype in decode_bio(sequence):
            highlights.append(
                {
                    "element_type_id": etype,
                    "start": p_start + start,
                    "end": p_start + end,
                    "surface": document.text[p_start + start : p_start + end],
                }
            )
    highlights.sort(key=lambda h: (h["start"], h["end"], h["element_type_id"]))
    return highlights


def extract_document(
    document: "Document", tagger: Tagger, schema: "Schema"
) -> set[tuple[str, str]]:
    """The document's predicted entity set: deduplicated (type, surface) pairs.

    Surfaces are read from the source text and trimmed of surrounding
    whitespace only; spans trimming to nothing are dropped. Exact-duplicate
    pairs collapse, which is what makes the result a set.
    """
    entities: set[tuple[str, str]] = set()
    for highlight in extract_highlights(document, tagger):
        etype = highlight["element_type_id"]
        if etype not in schema.element_ids:
            raise SchemaMismatch(
                f"tagger produced unknown element type {etype!r} "
                f"on document {document.doc_id!r}"
            )
        surface = highlight["surface"].strip()
        if surface:
            entities.add((etype, surface))
    return entities


def extract_entity_sets(
    corpus: "Corpus", doc_ids: Sequence[str], tagger: Tagger
) -> list[EntitySet]:
    """Predicted EntitySet per document, ready for evaluation."""
    return [
        EntitySet(
            doc_id,
            frozenset(extract_document(corpus.document(doc_id), tagger, corpus.schema)),
        )
        for doc_id in doc_ids
    ]
