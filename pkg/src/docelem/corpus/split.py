"""Deterministic train/dev/test splitting.

Counts follow largest-remainder rounding of the requested ratios, and the
assignment is a pure function of the document ids (and template ids) plus
the seed: reordering the corpus never changes who lands where. When
documents carry template ids the split is stratified so that a configurable
fraction of the test set comes from templates absent from the training set,
which is what makes a dedicated unseen-template evaluation possible.
"""

import hashlib
from dataclasses import replace
from typing import Sequence

from docelem.errors import AllZeroRatios, EmptyCorpus

from .types import Corpus, Document

DEFAULT_UNSEEN_TEST_FRACTION = 0.25


def _hash_key(seed: int, *parts: str) -> str:
    payload = "|".join([str(seed), *parts]).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def largest_remainder_counts(total: int, ratios: Sequence[float]) -> list[int]:
    """Apportion *total* into len(ratios) integer counts."""
    weight = sum(ratios)
    if weight <= 0:
        raise AllZeroRatios("ratios must sum to a positive value")
    if any(r < 0 for r in ratios):
        raise ValueError("ratios must be non-negative")
    quotas = [total * r / weight for r in ratios]
    counts = [int(q) for q in quotas]
    short = total - sum(counts)
    order = sorted(range(len(ratios)), key=lambda i: (counts[i] - quotas[i], i))
    for i in order[:short]:
        counts[i] += 1
    return counts


def split_corpus(
    corpus: Corpus,
    ratios: Sequence[float] = (6, 2, 2),
    seed: int = 0,
    unseen_test_fraction: float | None = None,
) -> Corpus:
    """Assign every document to train, dev, or test.

    ``unseen_test_fraction`` controls stratification: None picks the
    default (stratified iff any document has a template_id), 0 disables
    it, and a positive fraction reserves roughly that share of the test
    split for templates withheld entirely from train and dev.
    """
    if len(ratios) != 3:
        raise ValueError("ratios must have exactly three entries")
    docs = list(corpus.documents)
    if not docs:
        raise EmptyCorpus("cannot split an empty corpus")
    if len(docs) < 3:
        raise EmptyCorpus(f"cannot split a corpus of {len(docs)} documents")

    n_train, n_dev, n_test = largest_remainder_counts(len(docs), ratios)

    if unseen_test_fraction is None:
        has_templates = any(d.template_id for d in docs)
        unseen_test_fraction = DEFAULT_UNSEEN_TEST_FRACTION if has_templates else 0.0
    if not 0.0 <= unseen_test_fraction <= 1.0:
        raise ValueError("unseen_test_fraction must be within [0, 1]")

    assignment: dict[str, str] = {}
    remaining = sorted(docs, key=lambda d: _hash_key(seed, "doc", d.doc_id))

    test_ids: list[str] = []
    if unseen_test_fraction > 0 and n_test > 0:
        target_unseen = round(unseen_test_fraction * n_test)
        by_template: dict[str, list[Document]] = {}
        for d in docs:
            if d.template_id:
                by_template.setdefault(d.template_id, []).append(d)
        held_out: set[str] = set()
        taken = 0
        for tmpl in sorted(by_template, key=lambda t: _hash_key(seed, "tmpl", t)):
            if taken >= target_unseen:
                break
            group = by_template[tmpl]
            if taken + len(group) > n_test:
                continue
            held_out.add(tmpl)
            taken += len(group)
        test_ids = [d.doc_id for d in remaining if d.template_id in held_out]
        remaining = [d for d in remaining if d.template_id not in held_out]

    need_test = n_test - len(test_ids)
    for doc_id in test_ids:
        assignment[doc_id] = "test"
    for i, d in enumerate(remaining):
        if i < need_test:
            assignment[d.doc_id] = "test"
        elif i < need_test + n_dev:
            assignment[d.doc_id] = "dev"
        else:
            assignment[d.doc_id] = "train"

    return corpus.with_documents(
        replace(d, split=assignment[d.doc_id]) for d in corpus.documents
    )
