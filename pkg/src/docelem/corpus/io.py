"""Line-delimited corpus persistence.

Layout: a JSON manifest header line carrying the format version and the
schema, then one record per line — ``D<TAB>{...}`` for documents and
``A<TAB>{...}`` for annotations. UTF-8 throughout, human-diffable, and
append-friendly. ``load_corpus(save_corpus(c)) == c`` on all fields.
"""

import json
import os
from pathlib import Path

from docelem.errors import IoFailure, SchemaMismatch

from .types import Annotation, Corpus, Document, ElementType, Schema

FORMAT_NAME = "docelem-corpus"
FORMAT_VERSION = 1


def schema_to_dict(schema: Schema) -> dict:
    return {
        "name": schema.name,
        "elements": [
            {"id": e.id, "display_name": e.display_name, "description": e.description}
            for e in schema.elements
        ],
    }


def schema_from_dict(data: dict) -> Schema:
    try:
        elements = tuple(
            ElementType(e["id"], e["display_name"], e.get("description", ""))
            for e in data["elements"]
        )
        return Schema(data["name"], elements)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatch(f"malformed schema record: {exc}") from exc


def _document_record(doc: Document) -> dict:
    record = {
        "doc_id": doc.doc_id,
        "text": doc.text,
        "paragraphs": [list(p) for p in doc.paragraphs],
        "split": doc.split,
    }
    if doc.template_id is not None:
        record["template_id"] = doc.template_id
    return record


def _annotation_record(ann: Annotation) -> dict:
    record = {
        "doc_id": ann.doc_id,
        "element_type_id": ann.element_type_id,
        "start": ann.start,
        "end": ann.end,
        "source": ann.source,
    }
    if ann.ann_id is not None:
        record["id"] = ann.ann_id
    return record


def dump_corpus(corpus: Corpus) -> str:
    """Serialize a corpus to the line-delimited format."""
    lines = [
        json.dumps(
            {
                "format": FORMAT_NAME,
                "version": FORMAT_VERSION,
                "schema": schema_to_dict(corpus.schema),
            },
            ensure_ascii=False,
        )
    ]
    for doc in corpus.documents:
        lines.append("D\t" + json.dumps(_document_record(doc), ensure_ascii=False))
    for ann in corpus.annotations:
        lines.append("A\t" + json.dumps(_annotation_record(ann), ensure_ascii=False))
    return "\n".join(lines) + "\n"


def parse_corpus(payload: str) -> Corpus:
    lines = payload.splitlines()
    if not lines:
        raise SchemaMismatch("empty corpus file (missing manifest)")
    try:
        manifest = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"malformed manifest line: {exc}") from exc
    if manifest.get("format") != FORMAT_NAME:
        raise SchemaMismatch(f"not a {FORMAT_NAME} file")
    if manifest.get("version") != FORMAT_VERSION:
        raise SchemaMismatch(
            f"unsupported format version {manifest.get('version')!r} "
            f"(expected {FORMAT_VERSION})"
        )
    schema = schema_from_dict(manifest.get("schema", {}))

    documents: list[Document] = []
    annotations: list[Annotation] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        kind, _, body = line.partition("\t")
        try:
            record = json.loads(body)
        except json.JSONDecodeError as exc:
            raise SchemaMismatch(f"line {lineno}: malformed JSON: {exc}") from exc
        try:
            if kind == "D":
                documents.append(
                    Document(
                        record["doc_id"],
                        record["text"],
                        tuple(tuple(p) for p in record["paragraphs"]),
                        record.get("template_id"),
                        record.get("split", "unassigned"),
                    )
                )
            elif kind == "A":
                annotations.append(
                    Annotation(
                        record["doc_id"],
                        record["element_type_id"],
                        record["start"],
                        record["end"],
                        record.get("source", "gold"),
                        record.get("id"),
                    )
                )
            else:
                raise SchemaMismatch(f"line {lineno}: unknown record kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaMismatch(f"line {lineno}: {exc}") from exc
    return Corpus(schema, tuple(documents), tuple(annotations))


def save_corpus(corpus: Corpus, path: str | os.PathLike) -> None:
    """Write atomically: the previous file survives a failed write."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(dump_corpus(corpus), encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure(f"cannot write corpus to {path}: {exc}") from exc


def load_corpus(path: str | os.PathLike) -> Corpus:
    try:
        payload = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read corpus from {path}: {exc}") from exc
    return parse_corpus(payload)
