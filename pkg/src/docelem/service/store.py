"""Persistent document/annotation store behind the HTTP service.

One service instance manages one corpus under one active schema; the
corpus file format is the persistence layer, so anything the service
stores can be opened by the corpus tooling directly. All mutations run
under a single writer lock and rewrite the file atomically; reads are
lock-free against immutable snapshots.
"""

import itertools
import json
import threading
from pathlib import Path
from typing import Iterable

from docelem.corpus import (
    Annotation,
    Corpus,
    Schema,
    document_from_text,
    load_corpus,
    save_corpus,
)
from docelem.corpus.io import schema_from_dict, schema_to_dict
from docelem.errors import (
    EmptyDocument,
    OverlapConflict,
    SchemaMismatch,
    SpanOutOfRange,
    UnknownDocument,
    UnknownElementType,
)
from docelem.normalize import LeaseRoles, TypingRules

CORPUS_FILE = "corpus.det"
RULES_FILE = "typing.json"


def _typing_to_dict(rules: TypingRules) -> dict:
    out: dict = {"kinds": dict(rules.kinds)}
    if rules.lease_roles is not None:
        r = rules.lease_roles
        out["lease_roles"] = {"start": r.start, "end": r.end, "term": r.term}
    return out


def _typing_from_dict(data: dict) -> TypingRules:
    roles = data.get("lease_roles")
    return TypingRules(
        kinds=dict(data.get("kinds", {})),
        lease_roles=LeaseRoles(roles["start"], roles["end"], roles["term"])
        if roles
        else None,
    )


class Store:
    """Single-writer persistent state: corpus, schema, typing rules."""

    def __init__(self, data_dir: str | Path, initial_schema: Schema,
                 initial_rules: TypingRules | None = None):
        self._lock = threading.RLock()
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._corpus_path = self.data_dir / CORPUS_FILE
        self._rules_path = self.data_dir / RULES_FILE
        if self._corpus_path.exists():
            self._corpus = load_corpus(self._corpus_path)
        else:
            self._corpus = Corpus(initial_schema, ())
            save_corpus(self._corpus, self._corpus_path)
        if self._rules_path.exists():
            self._rules = _typing_from_dict(
                json.loads(self._rules_path.read_text(encoding="utf-8"))
            )
        else:
            self._rules = initial_rules or TypingRules(kinds={})
            self._save_rules()
        next_doc = self._max_suffix(d.doc_id for d in self._corpus.documents)
        next_ann = self._max_suffix(
            a.ann_id for a in self._corpus.annotations if a.ann_id
        )
        self._doc_counter = itertools.count(next_doc + 1)
        self._ann_counter = itertools.count(next_ann + 1)

    @staticmethod
    def _max_suffix(ids: Iterable[str]) -> int:
        best = 0
        for full in ids:
            tail = full.rsplit("-", 1)[-1]
            if tail.isdigit():
                best = max(best, int(tail))
        return best

    def _save(self) -> None:
        save_corpus(self._corpus, self._corpus_path)

    def _save_rules(self) -> None:
        self._rules_path.write_text(
            json.dumps(_typing_to_dict(self._rules), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )

    # reads ------------------------------------------------------------

    @property
    def corpus(self) -> Corpus:
        return self._corpus

    @property
    def schema(self) -> Schema:
        return self._corpus.schema

    @property
    def typing_rules(self) -> TypingRules:
        return self._rules

    def document(self, doc_id: str):
        try:
            return self._corpus.document(doc_id)
        except KeyError:
            raise UnknownDocument(f"no document {doc_id!r}") from None

    def annotations(self, doc_id: str) -> list[Annotation]:
        self.document(doc_id)
        return [a for a in self._corpus.annotations if a.doc_id == doc_id]

    # writes -----------------------------------------------------------

    def add_document(self, text: str, split: str = "unassigned") -> tuple[str, int]:
        """Returns (doc_id, paragraph count); segmentation happens here."""
        with self._lock:
            doc_id = f"doc-{next(self._doc_counter):06d}"
            document = document_from_text(doc_id, text, split=split)
            if not document.paragraphs:
                raise EmptyDocument("document has no non-empty paragraphs")
            self._corpus = self._corpus.with_documents(
                (*self._corpus.documents, document)
            )
            self._save()
            return doc_id, len(document.paragraphs)

    def add_annotation(self, doc_id: str, element_type_id: str,
                       start: int, end: int) -> Annotation:
        with self._lock:
            document = self.document(doc_id)
            if element_type_id not in self.schema.element_ids:
                raise UnknownElementType(
                    f"element {element_type_id!r} is not in schema "
                    f"{self.schema.name!r}"
                )
            if not (0 <= start < end <= len(document.text)):
                raise SpanOutOfRange(
                    f"span ({start}, {end}) invalid for a "
                    f"{len(document.text)}-character document"
                )
            if document.paragraph_containing(start, end) is None:
                raise SpanOutOfRange(
                    f"span ({start}, {end}) does not lie within one paragraph"
                )
            for other in self._corpus.annotations:
                if (
                    other.doc_id == doc_id
                    and other.element_type_id == element_type_id
                    and other.source == "gold"
                    and start < other.end
                    and other.start < end
                ):
                    raise OverlapConflict(
                        f"overlaps existing {element_type_id} annotation "
                        f"{other.ann_id} at ({other.start}, {other.end})"
                    )
            ann = Annotation(
                doc_id, element_type_id, start, end,
                source="gold", ann_id=f"ann-{next(self._ann_counter):06d}",
            )
            self._corpus = Corpus(
                self.schema, self._corpus.documents,
                (*self._corpus.annotations, ann),
            )
            self._save()
            return ann

    def delete_annotation(self, ann_id: str) -> None:
        with self._lock:
            remaining = tuple(
                a for a in self._corpus.annotations if a.ann_id != ann_id
            )
            if len(remaining) == len(self._corpus.annotations):
                raise UnknownDocument(f"no annotation {ann_id!r}")
            self._corpus = Corpus(self.schema, self._corpus.documents, remaining)
            self._save()

    def set_schema(self, schema: Schema, rules: TypingRules) -> None:
        """Replace the active schema; existing annotations must still fit."""
        with self._lock:
            used = {a.element_type_id for a in self._corpus.annotations}
            missing = used - set(schema.element_ids)
            if missing:
                raise SchemaMismatch(
                    f"stored annotations use element types not in the new "
                    f"schema: {sorted(missing)}"
                )
            self._corpus = Corpus(
                schema, self._corpus.documents, self._corpus.annotations
            )
            self._rules = rules
            self._save()
            self._save_rules()

    def set_split(self, doc_id: str, split: str) -> None:
        with self._lock:
            from dataclasses import replace

            document = self.document(doc_id)
            docs = tuple(
                replace(d, split=split) if d.doc_id == doc_id else d
                for d in self._corpus.documents
            )
            self._corpus = Corpus(self.schema, docs, self._corpus.annotations)
            self._save()


def schema_payload(schema: Schema, rules: TypingRules) -> dict:
    payload = schema_to_dict(schema)
    payload.update(_typing_to_dict(rules))
    return payload


def schema_from_payload(name: str, data: dict) -> tuple[Schema, TypingRules]:
    """Parse a PUT /v1/schemas body; the path name wins over any body name."""
    body = dict(data)
    body["name"] = name
    schema = schema_from_dict(body)
    kinds = body.get("kinds")
    if kinds is None:
        kinds = {
            e["id"]: e["kind"]
            for e in body.get("elements", ())
            if isinstance(e, dict) and e.get("kind")
        }
    try:
        rules = _typing_from_dict({"kinds": kinds, "lease_roles": body.get("lease_roles")})
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatch(f"bad typing rules: {exc}") from exc
    return schema, rules
