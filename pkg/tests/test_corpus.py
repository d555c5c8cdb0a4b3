import random

import pytest

from docelem.corpus import (
    Annotation,
    Corpus,
    ElementType,
    Schema,
    Template,
    document_from_text,
    dump_corpus,
    generate_synthetic_corpus,
    parse_corpus,
)
from docelem.corpus.types import gold_entity_sets
from docelem.errors import SchemaMismatch, UnknownPlaceholder

SCHEMA = Schema("mini", (ElementType("who", "Who"), ElementType("amt", "Amount")))


def test_document_paragraphs_from_text():
    doc = document_from_text("d1", "甲方：张伟\n\n租金100元")
    assert [doc.paragraph_text(i) for i in range(2)] == ["甲方：张伟", "租金100元"]


def test_annotation_must_sit_inside_one_paragraph():
    doc = document_from_text("d1", "abc\ndef")
    with pytest.raises(SchemaMismatch):
        Corpus(SCHEMA, (doc,), (Annotation("d1", "who", 2, 5),))


def test_same_type_gold_overlap_rejected():
    doc = document_from_text("d1", "abcdef")
    with pytest.raises(SchemaMismatch):
        Corpus(
            SCHEMA,
            (doc,),
            (Annotation("d1", "who", 0, 3), Annotation("d1", "who", 2, 5)),
        )


def test_cross_type_gold_overlap_allowed():
    doc = document_from_text("d1", "abcdef")
    corpus = Corpus(
        SCHEMA,
        (doc,),
        (Annotation("d1", "who", 0, 3), Annotation("d1", "amt", 2, 5)),
    )
    assert len(corpus.annotations) == 2


def test_gold_entity_sets_trim_and_dedup():
    doc = document_from_text("d1", "a 张伟 b\n张伟")
    corpus = Corpus(
        SCHEMA,
        (doc,),
        (Annotation("d1", "who", 1, 5), Annotation("d1", "who", 7, 9)),
    )
    # first span covers " 张伟 " with the spaces; trims to the same pair
    assert gold_entity_sets(corpus)["d1"] == {("who", "张伟")}


# ---------------------------------------------------------------- synth ----


def test_render_rejects_unknown_placeholder():
    with pytest.raises(UnknownPlaceholder):
        generate_synthetic_corpus(
            SCHEMA, [Template("t", "x {{nope}} y")], instances_per_template=1
        )


def test_generation_is_deterministic():
    templates = [Template("t1", "甲方：{{who}}，金额{{amt}}元。")]
    kinds = {"who": "name", "amt": "integer"}
    a = generate_synthetic_corpus(SCHEMA, templates, (1, 3), seed=5, element_kinds=kinds)
    b = generate_synthetic_corpus(SCHEMA, templates, (1, 3), seed=5, element_kinds=kinds)
    assert dump_corpus(a) == dump_corpus(b)
    c = generate_synthetic_corpus(SCHEMA, templates, (1, 3), seed=6, element_kinds=kinds)
    assert dump_corpus(a) != dump_corpus(c)


def test_generated_annotations_slice_to_inserted_values(lease_corpus):
    for ann in lease_corpus.annotations:
        doc = lease_corpus.document(ann.doc_id)
        surface = doc.text[ann.start : ann.end]
        assert surface.strip() == surface and surface


def test_template_order_does_not_change_a_templates_documents():
    t1 = Template("t1", "甲方：{{who}}。")
    t2 = Template("t2", "乙方：{{who}}。")
    kinds = {"who": "name"}
    ab = generate_synthetic_corpus(SCHEMA, [t1, t2], 2, seed=9, element_kinds=kinds)
    ba = generate_synthetic_corpus(SCHEMA, [t2, t1], 2, seed=9, element_kinds=kinds)
    texts_ab = {d.doc_id: d.text for d in ab.documents}
    texts_ba = {d.doc_id: d.text for d in ba.documents}
    assert texts_ab == texts_ba


# ------------------------------------------------------------------- io ----


def test_corpus_file_round_trip(lease_corpus):
    payload = dump_corpus(lease_corpus)
    back = parse_corpus(payload)
    assert dump_corpus(back) == payload
    assert back.schema == lease_corpus.schema
    assert back.doc_ids() == lease_corpus.doc_ids()
    assert back.annotations == lease_corpus.annotations


def test_parse_rejects_garbage():
    with pytest.raises(SchemaMismatch):
        parse_corpus("not a corpus\n")


def test_parse_reports_line_numbers():
    payload = dump_corpus(
        Corpus(SCHEMA, (document_from_text("d1", "abc"),))
    )
    broken = payload + "A\t{\"nope\": 1}\n"
    with pytest.raises(SchemaMismatch) as err:
        parse_corpus(broken)
    assert "line" in str(err.value)
