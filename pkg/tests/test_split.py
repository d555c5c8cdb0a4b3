import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from docelem.corpus import Corpus, ElementType, Schema, document_from_text
from docelem.corpus.split import largest_remainder_counts, split_corpus
from docelem.errors import AllZeroRatios, EmptyCorpus

SCHEMA = Schema("s", (ElementType("x", "X"),))


def _corpus(n_docs: int, templates: int = 0) -> Corpus:
    docs = []
    for i in range(n_docs):
        template = f"t{i % templates}" if templates else None
        docs.append(
            document_from_text(f"d{i:03d}", f"文档{i}号", template_id=template)
        )
    return Corpus(SCHEMA, tuple(docs))


# --------------------------------------------------- largest remainder ----


def test_reference_split_sizes():
    assert largest_remainder_counts(150, (6, 2, 2)) == [90, 30, 30]
    assert largest_remainder_counts(223, (6, 2, 2)) == [134, 45, 44]


def test_counts_always_sum_to_total():
    for total in range(0, 50):
        assert sum(largest_remainder_counts(total, (6, 2, 2))) == total


@given(
    st.integers(0, 500),
    st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9)),
)
def test_largest_remainder_properties(total, ratios):
    if sum(ratios) == 0:
        with pytest.raises(AllZeroRatios):
            largest_remainder_counts(total, ratios)
        return
    counts = largest_remainder_counts(total, ratios)
    assert sum(counts) == total
    assert all(c >= 0 for c in counts)
    # no count is more than 1 away from its exact share
    for count, ratio in zip(counts, ratios):
        exact = total * ratio / sum(ratios)
        assert abs(count - exact) < 1


def test_zero_ratio_component_gets_nothing():
    assert largest_remainder_counts(10, (1, 0, 1)) == [5, 0, 5]


# --------------------------------------------------------- split_corpus ----


def test_split_is_deterministic_and_seed_sensitive():
    corpus = _corpus(30)
    a = split_corpus(corpus, seed=1)
    b = split_corpus(corpus, seed=1)
    c = split_corpus(corpus, seed=2)
    key = lambda cp: {d.doc_id: d.split for d in cp.documents}
    assert key(a) == key(b)
    assert key(a) != key(c)


def test_split_ignores_document_order():
    corpus = _corpus(30)
    shuffled_docs = list(corpus.documents)
    random.Random(4).shuffle(shuffled_docs)
    shuffled = Corpus(SCHEMA, tuple(shuffled_docs))
    a = split_corpus(corpus, seed=8)
    b = split_corpus(shuffled, seed=8)
    assert {d.doc_id: d.split for d in a.documents} == {
        d.doc_id: d.split for d in b.documents
    }


def test_splits_partition_the_corpus():
    split = split_corpus(_corpus(50), seed=0)
    ids = [set(split.split_doc_ids(s)) for s in ("train", "dev", "test")]
    assert sum(len(s) for s in ids) == 50
    assert ids[0] | ids[1] | ids[2] == set(split.doc_ids())
    assert not (ids[0] & ids[1] or ids[0] & ids[2] or ids[1] & ids[2])


def test_tiny_corpus_refused():
    with pytest.raises(EmptyCorpus):
        split_corpus(_corpus(2), seed=0)


def test_unseen_templates_held_out_of_training():
    corpus = _corpus(60, templates=20)
    split = split_corpus(corpus, seed=5)  # template ids present: holdout auto-on
    train_templates = {
        split.document(d).template_id for d in split.split_doc_ids("train")
    }
    dev_templates = {
        split.document(d).template_id for d in split.split_doc_ids("dev")
    }
    test_docs = [split.document(d) for d in split.split_doc_ids("test")]
    unseen = [d for d in test_docs if d.template_id not in train_templates | dev_templates]
    assert unseen, "stratified holdout produced no unseen-template test docs"
    # held-out templates are completely absent from train and dev
    unseen_templates = {d.template_id for d in unseen}
    assert not (unseen_templates & (train_templates | dev_templates))


def test_without_template_ids_no_holdout_is_attempted():
    split = split_corpus(_corpus(30), seed=5)
    counts = [len(split.split_doc_ids(s)) for s in ("train", "dev", "test")]
    assert counts == [18, 6, 6]
