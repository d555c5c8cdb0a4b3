"""Wire codec for remote tagging: strict validation both ways."""

import pytest

from docelem.corpus.types import Annotation, Corpus, ElementType, Schema, document_from_text
from docelem.errors import MalformedResponse
from docelem.taggers import (
    ParagraphItem,
    TaggerRequest,
    label_alphabet,
    sequences_from_response,
    tag_request_to_wire,
    tag_response_from_wire,
    train_items_from_corpus,
    train_request_to_wire,
)
from docelem.textprep import decode_bio, tokenize

ELEMENTS = ("lessor", "rent")


def _item(doc_id, index, text):
    return ParagraphItem(doc_id, index, tuple(tokenize(text)))


def _request():
    return TaggerRequest(
        "req-1",
        (_item("d1", 0, "出租方：张伟"), _item("d1", 1, "租金3万元")),
    )


def _valid_payload():
    return {
        "request_id": "req-1",
        "items": [
            # order deliberately reversed; matching is by key
            {"doc_id": "d1", "paragraph_index": 1, "labels": ["O", "O", "B-rent", "I-rent", "O"]},
            {"doc_id": "d1", "paragraph_index": 0, "labels": ["O", "O", "O", "O", "B-lessor", "I-lessor"]},
        ],
    }


def test_alphabet_follows_schema_order():
    assert label_alphabet(ELEMENTS) == ["O", "B-lessor", "I-lessor", "B-rent", "I-rent"]


def test_request_wire_shape_carries_token_texts_only():
    wire = tag_request_to_wire(_request(), ELEMENTS)
    assert wire["request_id"] == "req-1"
    assert wire["schema_elements"] == ["lessor", "rent"]
    assert wire["items"][0] == {
        "doc_id": "d1",
        "paragraph_index": 0,
        "tokens": ["出", "租", "方", "：", "张", "伟"],
    }


def test_response_items_are_reordered_to_request_order():
    request = _request()
    response = tag_response_from_wire(_valid_payload(), request, ELEMENTS)
    assert [i.paragraph_index for i in response.items] == [0, 1]
    sequences = sequences_from_response(request, response)
    assert sequences[0].tokens == request.items[0].tokens
    assert decode_bio(sequences[0]) == [(4, 6, "lessor")]
    assert decode_bio(sequences[1]) == [(2, 4, "rent")]


def _expect_malformed(payload, match):
    request = _request()
    with pytest.raises(MalformedResponse, match=match) as info:
        tag_response_from_wire(payload, request, ELEMENTS)
    assert info.value.request_id == "req-1"
    assert info.value.detail


def test_non_object_body_is_rejected():
    _expect_malformed([], "not an object")


def test_request_id_must_echo():
    payload = _valid_payload()
    payload["request_id"] = "req-2"
    _expect_malformed(payload, "does not match")


def test_items_must_be_a_list():
    _expect_malformed({"request_id": "req-1", "items": {}}, "not a list")


def test_item_count_must_match():
    payload = _valid_payload()
    payload["items"].pop()
    _expect_malformed(payload, "1 items for 2")


def test_items_must_be_objects():
    payload = _valid_payload()
    payload["items"][0] = "oops"
    _expect_malformed(payload, "not an object")


def test_item_keys_must_be_typed():
    payload = _valid_payload()
    payload["items"][0]["paragraph_index"] = "1"
    _expect_malformed(payload, "bad item key")


def test_labels_must_be_strings():
    payload = _valid_payload()
    payload["items"][0]["labels"] = ["O", 3, "O", "O"]
    _expect_malformed(payload, "labels missing")


def test_duplicate_keys_are_rejected():
    payload = _valid_payload()
    payload["items"][1] = dict(payload["items"][0])
    _expect_malformed(payload, "duplicate item")


def test_unrequested_keys_leave_a_request_item_unanswered():
    payload = _valid_payload()
    payload["items"][1]["paragraph_index"] = 7
    _expect_malformed(payload, "no response item")


def test_label_count_must_match_token_count():
    payload = _valid_payload()
    payload["items"][1]["labels"] = ["O"] * 5
    _expect_malformed(payload, "5 labels for 6 tokens")


def test_labels_must_come_from_the_schema_alphabet():
    payload = _valid_payload()
    payload["items"][0]["labels"] = ["O", "O", "B-price", "I-price", "O"]
    _expect_malformed(payload, "outside the schema alphabet")


def _training_corpus():
    schema = Schema("mini", (ElementType("lessor", "出租方"), ElementType("rent", "租金")))
    text = "出租方：张伟\n租金3万元"
    doc = document_from_text("d1", text)
    bare = document_from_text("d2", "与本案无关的段落")
    ann = Annotation("d1", "lessor", 4, 6)
    return Corpus(schema, (doc, bare), (ann,))


def test_train_items_carry_aligned_gold_labels():
    corpus = _training_corpus()
    items = train_items_from_corpus(corpus, ["d1", "d2"])
    assert [(i["doc_id"], i["paragraph_index"]) for i in items] == [
        ("d1", 0),
        ("d1", 1),
        ("d2", 0),
    ]
    first = items[0]
    assert first["tokens"] == ["出", "租", "方", "：", "张", "伟"]
    assert first["labels"] == ["O", "O", "O", "O", "B-lessor", "I-lessor"]
    assert len(items[1]["labels"]) == len(items[1]["tokens"])
    # unannotated documents still travel, all O
    assert set(items[2]["labels"]) == {"O"}


def test_train_request_wire_shape():
    corpus = _training_corpus()
    train = train_items_from_corpus(corpus, ["d1"])
    dev = train_items_from_corpus(corpus, ["d2"])
    wire = train_request_to_wire("req-9", ELEMENTS, {"epochs": 8}, train, dev)
    assert set(wire) == {"request_id", "schema_elements", "config", "train", "dev"}
    assert wire["config"] == {"epochs": 8}
    assert wire["train"] == train and wire["dev"] == dev
