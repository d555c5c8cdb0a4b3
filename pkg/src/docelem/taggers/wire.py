"""JSON wire codec for the tagging and training endpoints.

Tag endpoint: POST /v1/tag
    -> {request_id, schema_elements: [ids], items: [{doc_id, paragraph_index, tokens: [...]}]}
    <- {request_id, items: [{doc_id, paragraph_index, labels: [...]}]}

Train endpoint: POST /v1/train
    -> {request_id, schema_elements, config: {max_len, learning_rate, epochs, ...},
        train: [items with labels], dev: [items with labels]}
    <- 202 {job_id}
    GET /v1/train/{job_id} <- {job_id, status, model_tag?, error?, log_tail}

Token offsets stay on the client side; only token texts travel. Response
items may arrive in any order and are matched back to request items by
(doc_id, paragraph_index). Every validation failure raises
MalformedResponse carrying the request_id, so a bad batch is rejected
whole, never silently truncated.
"""

from typing import TYPE_CHECKING, Iterable, Sequence

from docelem.errors import MalformedResponse
from docelem.textprep import LabelSequence, encode_document

from .base import LabeledItem, ParagraphItem, TaggerRequest, TaggerResponse

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Corpus


def label_alphabet(element_ids: Sequence[str]) -> list[str]:
    """["O", "B-a", "I-a", "B-b", "I-b", ...] in schema element order."""
    out = ["O"]
    for element_id in element_ids:
        out.append(f"B-{element_id}")
        out.append(f"I-{element_id}")
    return out


def tag_request_to_wire(request: TaggerRequest, schema_elements: Sequence[str]) -> dict:
    return {
        "request_id": request.request_id,
        "schema_elements": list(schema_elements),
        "items": [
            {
                "doc_id": item.doc_id,
                "paragraph_index": item.paragraph_index,
                "tokens": [tok.text for tok in item.tokens],
            }
            for item in request.items
        ],
    }


def tag_response_from_wire(
    payload: object,
    request: TaggerRequest,
    schema_elements: Sequence[str],
) -> TaggerResponse:
    """Validate a /v1/tag response body against its request."""
    rid = request.request_id

    def bad(detail: str) -> MalformedResponse:
        return MalformedResponse(rid, detail)

    if not isinstance(payload, dict):
        raise bad(f"body is {type(payload).__name__}, not an object")
    if payload.get("request_id") != rid:
        raise bad(f"request_id {payload.get('request_id')!r} does not match")
    raw_items = payload.get("items")
    if not isinstance(raw_items, list):
        raise bad("items missing or not a list")
    if len(raw_items) != len(request.items):
        raise bad(f"{len(raw_items)} items for {len(request.items)} requested")

    alphabet = set(label_alphabet(schema_elements))
    by_key: dict[tuple[str, int], tuple[str, ...]] = {}
    for raw in raw_items:
        if not isinstance(raw, dict):
            raise bad("item is not an object")
        key = (raw.get("doc_id"), raw.get("paragraph_index"))
        labels = raw.get("labels")
        if not isinstance(key[0], str) or not isinstance(key[1], int):
            raise bad(f"bad item key {key!r}")
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise bad(f"labels missing for {key!r}")
        if key in by_key:
            raise bad(f"duplicate item {key!r}")
        by_key[key] = tuple(labels)

    items = []
    for req_item in request.items:
        key = (req_item.doc_id, req_item.paragraph_index)
        if key not in by_key:
            raise bad(f"no response item for {key!r}")
        labels = by_key[key]
        if len(labels) != len(req_item.tokens):
            raise bad(
                f"{len(labels)} labels for {len(req_item.tokens)} tokens at {key!r}"
            )
        unknown = next((lab for lab in labels if lab not in alphabet), None)
        if unknown is not None:
            raise bad(f"label {unknown!r} outside the schema alphabet")
        items.append(LabeledItem(req_item.doc_id, req_item.paragraph_index, labels))
    return TaggerResponse(rid, tuple(items))


def sequences_from_response(
    request: TaggerRequest, response: TaggerResponse
) -> list[LabelSequence]:
    return [
        LabelSequence((item.doc_id, item.paragraph_index), req_item.tokens, item.labels)
        for req_item, item in zip(request.items, response.items)
    ]


def labeled_item_to_wire(item: ParagraphItem, labels: Sequence[str]) -> dict:
    return {
        "doc_id": item.doc_id,
        "paragraph_index": item.paragraph_index,
        "tokens": [tok.text for tok in item.tokens],
        "labels": list(labels),
    }


def train_items_from_corpus(corpus: "Corpus", doc_ids: Iterable[str]) -> list[dict]:
    """Gold-labeled wire items for the given documents, paragraph by paragraph.

    Paragraphs with zero tokens cannot exist; documents are included even
    when every label is O so the sampled sizes stay honest.
    """
    items = []
    for doc_id in doc_ids:
        document = corpus.document(doc_id)
        gold = [a for a in corpus.annotations_for(doc_id) if a.source == "gold"]
        for sequence, _notes in encode_document(document, gold):
            _, index = sequence.paragraph_ref
            item = ParagraphItem(doc_id, index, sequence.tokens)
            items.append(labeled_item_to_wire(item, sequence.labels))
    return items


def train_request_to_wire(
    request_id: str,
    schema_elements: Sequence[str],
    config: dict,
    train_items: list[dict],
    dev_items: list[dict],
) -> dict:
    return {
        "request_id": request_id,
        "schema_elements": list(schema_elements),
        "config": dict(config),
        "train": train_items,
        "dev": dev_items,
    }
