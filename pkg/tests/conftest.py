import random

import pytest

from docelem.corpus import generate_synthetic_corpus
from docelem.corpus.split import split_corpus
from docelem.demo import lease_element_kinds, lease_schema, lease_templates
from docelem.textprep import Token

CJK_POOL = "租赁期限自年月日起至止合同有效度金共计为元人民币甲方乙出质股份公告第条"
ASCII_POOL = "0123456789abcdefghijklmnopqrstuvwxyz.,%"


def random_paragraph(rng: random.Random, min_tokens: int = 1) -> str:
    """Mixed CJK/ASCII/whitespace paragraph with at least one token."""
    while True:
        parts = []
        for _ in range(rng.randint(1, 12)):
            roll = rng.random()
            if roll < 0.55:
                parts.append("".join(rng.choice(CJK_POOL) for _ in range(rng.randint(1, 8))))
            elif roll < 0.85:
                parts.append("".join(rng.choice(ASCII_POOL) for _ in range(rng.randint(1, 6))))
            else:
                parts.append(" " * rng.randint(1, 3))
        text = "".join(parts).strip()
        if text:
            return text


def random_token_aligned_spans(
    rng: random.Random, tokens: list[Token], type_pool: tuple[str, ...]
) -> list[tuple[int, int, str]]:
    """Disjoint token runs turned into character spans with random types."""
    spans = []
    i = 0
    while i < len(tokens):
        if rng.random() < 0.4:
            j = min(len(tokens) - 1, i + rng.randint(0, 3))
            spans.append((tokens[i].start, tokens[j].end, rng.choice(type_pool)))
            i = j + 2  # leave a gap between spans to keep density realistic
        else:
            i += 1
    return spans


@pytest.fixture(scope="session")
def lease_corpus():
    """40ish lease documents from 15 templates, split 6:2:2."""
    schema = lease_schema()
    templates = lease_templates(15, seed=7)
    corpus = generate_synthetic_corpus(
        schema,
        templates,
        instances_per_template=(2, 3),
        seed=11,
        element_kinds=lease_element_kinds(),
    )
    return split_corpus(corpus, seed=3)


@pytest.fixture(scope="session")
def lease_templates_15():
    return lease_templates(15, seed=7)


@pytest.fixture(scope="session")
def big_lease_corpus():
    """~130 documents over 50 lease templates, split 6:2:2."""
    schema = lease_schema()
    templates = lease_templates(50, seed=1)
    corpus = generate_synthetic_corpus(
        schema,
        templates,
        instances_per_template=(2, 3),
        seed=4,
        element_kinds=lease_element_kinds(),
    )
    return split_corpus(corpus, seed=13)
