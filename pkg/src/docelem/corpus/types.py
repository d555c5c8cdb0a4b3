"""Corpus domain types: schemas, documents, annotations, templates.

All values are immutable after construction; invariants are enforced in
``__post_init__`` so an invalid value can never exist. Cross-object
invariants (annotation bounds, paragraph containment, same-type gold
overlap) are enforced when a Corpus is assembled.
"""

import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from docelem.errors import SchemaMismatch

_ID_RE = re.compile(r"[a-z0-9_]+")

SPLITS = ("train", "dev", "test", "unassigned")

ANNOTATION_SOURCES = ("gold", "predicted")

FILLER_KINDS = ("name", "company", "address", "money", "date", "percent", "integer")

PLACEHOLDER_RE = re.compile(r"\{\{([a-z0-9_]+|filler:[a-z]+)\}\}")


@dataclass(frozen=True)
class ElementType:
    id: str
    display_name: str
    description: str = ""

    def __post_init__(self):
        if not _ID_RE.fullmatch(self.id):
            raise ValueError(f"element id {self.id!r} must match [a-z0-9_]+")


@dataclass(frozen=True)
class Schema:
    name: str
    elements: tuple[ElementType, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError(f"schema {self.name!r} has no elements")
        ids = [e.id for e in self.elements]
        if len(set(ids)) != len(ids):
            raise ValueError(f"schema {self.name!r} has duplicate element ids")

    @property
    def element_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.elements)

    def element(self, element_id: str) -> ElementType:
        for e in self.elements:
            if e.id == element_id:
                return e
        raise KeyError(element_id)


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    paragraphs: tuple[tuple[int, int], ...]
    template_id: str | None = None
    split: str = "unassigned"

    def __post_init__(self):
        object.__setattr__(
            self, "paragraphs", tuple((int(s), int(e)) for s, e in self.paragraphs)
        )
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.split not in SPLITS:
            raise ValueError(f"unknown split {self.split!r}")
        prev_end = -1
        for s, e in self.paragraphs:
            if not (0 <= s < e <= len(self.text)):
                raise ValueError(
                    f"paragraph ({s}, {e}) out of bounds in document {self.doc_id!r}"
                )
            if s < prev_end:
                raise ValueError(
                    f"paragraphs overlap or are unsorted in document {self.doc_id!r}"
                )
            prev_end = e

    def paragraph_text(self, index: int) -> str:
        s, e = self.paragraphs[index]
        return self.text[s:e]

    def paragraph_containing(self, start: int, end: int) -> int | None:
        """Index of the paragraph fully containing [start, end), if any."""
        for i, (s, e) in enumerate(self.paragraphs):
            if start >= s and end <= e:
                return i
        return None


def document_from_text(
    doc_id: str,
    text: str,
    template_id: str | None = None,
    split: str = "unassigned",
) -> Document:
    """Build a Document with paragraph ranges segmented from *text*."""
    from docelem.textprep import segment

    return Document(doc_id, text, tuple(segment(text)), template_id, split)


@dataclass(frozen=True)
class Annotation:
    doc_id: str
    element_type_id: str
    start: int
    end: int
    source: str = "gold"
    ann_id: str | None = None  # service-assigned; irrelevant to label semantics

    def __post_init__(self):
        if self.source not in ANNOTATION_SOURCES:
            raise ValueError(f"unknown annotation source {self.source!r}")
        if not (0 <= self.start < self.end):
            raise ValueError(
                f"annotation span ({self.start}, {self.end}) must be non-empty"
            )


@dataclass(frozen=True)
class Corpus:
    schema: Schema
    documents: tuple[Document, ...]
    annotations: tuple[Annotation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        object.__setattr__(self, "annotations", tuple(self.annotations))
        index: dict[str, Document] = {}
        for doc in self.documents:
            if doc.doc_id in index:
                raise ValueError(f"duplicate doc_id {doc.doc_id!r}")
            index[doc.doc_id] = doc
        object.__setattr__(self, "_index", index)
        element_ids = set(self.schema.element_ids)
        gold_by_doc: dict[tuple[str, str], list[Annotation]] = {}
        for ann in self.annotations:
            doc = index.get(ann.doc_id)
            if doc is None:
                raise SchemaMismatch(
                    f"annotation references unknown document {ann.doc_id!r}"
                )
            if ann.element_type_id not in element_ids:
                raise SchemaMismatch(
                    f"annotation on {ann.doc_id!r} references unknown element "
                    f"{ann.element_type_id!r}"
                )
            if ann.end > len(doc.text):
                raise SchemaMismatch(
                    f"annotation ({ann.start}, {ann.end}) exceeds text of "
                    f"document {ann.doc_id!r}"
                )
            if doc.paragraph_containing(ann.start, ann.end) is None:
                raise SchemaMismatch(
                    f"annotation ({ann.start}, {ann.end}) on {ann.doc_id!r} "
                    f"does not lie within one paragraph"
                )
            if ann.source == "gold":
                gold_by_doc.setdefault((ann.doc_id, ann.element_type_id), []).append(ann)
        for (doc_id, etype), group in gold_by_doc.items():
            group.sort(key=lambda a: (a.start, a.end))
            for a, b in zip(group, group[1:]):
                if b.start < a.end:
                    raise SchemaMismatch(
                        f"gold {etype} annotations overlap on document {doc_id!r}: "
                        f"({a.start}, {a.end}) and ({b.start}, {b.end})"
                    )

    def document(self, doc_id: str) -> Document:
        return self._index[doc_id]  # type: ignore[attr-defined]

    def doc_ids(self) -> tuple[str, ...]:
        return tuple(d.doc_id for d in self.documents)

    def split_doc_ids(self, split: str) -> tuple[str, ...]:
        return tuple(d.doc_id for d in self.documents if d.split == split)

    def annotations_for(self, doc_id: str, source: str = "gold") -> tuple[Annotation, ...]:
        return tuple(
            a for a in self.annotations if a.doc_id == doc_id and a.source == source
        )

    def with_documents(self, documents: Iterable[Document]) -> "Corpus":
        return replace(self, documents=tuple(documents))


@dataclass(frozen=True)
class Template:
    template_id: str
    body: str

    def placeholders(self) -> list[tuple[int, int, str]]:
        """(start, end, name) of each placeholder; name is an element id
        or ``filler:kind``."""
        return [(m.start(), m.end(), m.group(1)) for m in PLACEHOLDER_RE.finditer(self.body)]

    def element_ids(self) -> set[str]:
        return {
            name for _, _, name in self.placeholders() if not name.startswith("filler:")
        }


def gold_entity_sets(corpus: Corpus) -> Mapping[str, set[tuple[str, str]]]:
    """Document-level gold entity sets keyed by doc_id.

    Entries are (element_type_id, surface) with the surface read from the
    document text and trimmed, mirroring how predictions are extracted.
    """
    out: dict[str, set[tuple[str, str]]] = {d.doc_id: set() for d in corpus.documents}
    for ann in corpus.annotations:
        if ann.source != "gold":
            continue
        doc = corpus.document(ann.doc_id)
        surface = doc.text[ann.start : ann.end].strip()
        if surface:
            out[ann.doc_id].add((ann.element_type_id, surface))
    return out
