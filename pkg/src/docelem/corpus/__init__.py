from .io import dump_corpus, load_corpus, parse_corpus, save_corpus
from .split import largest_remainder_counts, split_corpus
from .synth import fake_value, generate_synthetic_corpus, render_template
from .types import (
    Annotation,
    Corpus,
    Document,
    ElementType,
    Schema,
    Template,
    document_from_text,
    gold_entity_sets,
)

__all__ = [
    "Annotation",
    "Corpus",
    "Document",
    "ElementType",
    "Schema",
    "Template",
    "document_from_text",
    "dump_corpus",
    "fake_value",
    "generate_synthetic_corpus",
    "gold_entity_sets",
    "largest_remainder_counts",
    "load_corpus",
    "parse_corpus",
    "render_template",
    "save_corpus",
    "split_corpus",
]
