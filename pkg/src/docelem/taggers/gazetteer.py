"""Deterministic pattern tagger.

Rules pair an element type with a regex over the paragraph text; one
capture group marks the substring that becomes the span. Rules can be
written by hand, derived from templates (each placeholder's literal
context becomes the trigger), or derived from annotated documents (the
context around each gold span). The last form behaves like a trainable
tagger whose coverage grows with the training data, which is what the
ablation harness runs in model-free mode.

Config format, one rule per line, tab-separated:

    element_id<TAB>pattern<TAB>capture-group

Blank lines and lines starting with # are skipped. The capture group is a
number or a group name.
"""

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from docelem.errors import SchemaMismatch
from docelem.textprep import LabelSequence, Span, encode_bio

from .base import ParagraphItem, paragraph_surface

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Corpus, Schema, Template

# Longest literal context kept on each side of a derived capture.
_PREFIX_CHARS = 16
_SUFFIX_CHARS = 6


@dataclass(frozen=True)
class GazetteerRule:
    element_type_id: str
    pattern: str
    group: int | str = 1

    def __post_init__(self):
        compiled = re.compile(self.pattern)
        if isinstance(self.group, int):
            if not 1 <= self.group <= compiled.groups:
                raise ValueError(
                    f"group {self.group} not in pattern {self.pattern!r}"
                )
        elif self.group not in compiled.groupindex:
            raise ValueError(f"group {self.group!r} not in pattern {self.pattern!r}")
        object.__setattr__(self, "_regex", compiled)

    @property
    def regex(self) -> re.Pattern:
        return self._regex  # type: ignore[attr-defined]


def parse_gazetteer_config(text: str) -> list[GazetteerRule]:
    rules = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated fields")
        element_id, pattern, group_text = parts
        group: int | str = int(group_text) if group_text.strip().isdigit() else group_text.strip()
        try:
            rules.append(GazetteerRule(element_id.strip(), pattern, group))
        except (re.error, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return rules


def render_gazetteer_config(rules: Iterable[GazetteerRule]) -> str:
    lines = [f"{r.element_type_id}\t{r.pattern}\t{r.group}" for r in rules]
    return "\n".join(lines) + ("\n" if lines else "")


def _context_rule(element_id: str, prefix: str, suffix: str) -> GazetteerRule | None:
    prefix = prefix[-_PREFIX_CHARS:]
    suffix = suffix[:_SUFFIX_CHARS]
    if not prefix and not suffix:
        return None  # nothing to anchor on
    return GazetteerRule(
        element_id, f"{re.escape(prefix)}(.+?){re.escape(suffix)}"
        if suffix
        else f"{re.escape(prefix)}(.+?)$",
    )


def _dedup(rules: Iterable[GazetteerRule]) -> list[GazetteerRule]:
    seen = set()
    out = []
    for rule in rules:
        key = (rule.element_type_id, rule.pattern, rule.group)
        if key not in seen:
            seen.add(key)
            out.append(rule)
    return out


def rules_from_templates(
    templates: Iterable["Template"], schema: "Schema"
) -> list[GazetteerRule]:
    """One rule per placeholder occurrence, anchored on its literal context.

    Context stops at the nearest other placeholder or line break, so the
    trigger is text that every rendering of the template reproduces
    verbatim.
    """
    from docelem.corpus.types import PLACEHOLDER_RE

    rules = []
    for template in templates:
        body = template.body
        matches = list(PLACEHOLDER_RE.finditer(body))
        for i, m in enumerate(matches):
            name = m.group(1)
            if name.startswith("filler:"):
                continue
            if name not in schema.element_ids:
                raise SchemaMismatch(
                    f"template {template.template_id!r} uses unknown element {name!r}"
                )
            prev_end = matches[i - 1].end() if i else 0
            next_start = matches[i + 1].start() if i + 1 < len(matches) else len(body)
            prefix = body[prev_end:m.start()].rsplit("\n", 1)[-1]
            suffix = body[m.end():next_start].split("\n", 1)[0]
            rule = _context_rule(name, prefix, suffix)
            if rule is not None:
                rules.append(rule)
    return _dedup(rules)


def rules_from_annotations(
    corpus: "Corpus", doc_ids: Iterable[str]
) -> list[GazetteerRule]:
    """Derive rules from the gold spans of the given documents.

    The literal context around each gold span becomes a trigger. Distinct
    contexts accumulate, so rule coverage (and recall on documents written
    from the same boilerplate) grows with the amount of annotated data.
    """
    rules = []
    for doc_id in sorted(set(doc_ids)):
        document = corpus.document(doc_id)
        for ann in corpus.annotations_for(doc_id):
            if ann.source != "gold":
                continue
            index = document.paragraph_containing(ann.start, ann.end)
            if index is None:
                continue
            p_start, p_end = document.paragraphs[index]
            text = document.text[p_start:p_end]
            start, end = ann.start - p_start, ann.end - p_start
            rule = _context_rule(
                ann.element_type_id, text[:start], text[end:]
            )
            if rule is not None:
                rules.append(rule)
    return _dedup(rules)


def _drop_same_type_overlaps(spans: list[Span]) -> list[Span]:
    """Keep the earliest-starting (then longest) span per same-type overlap."""
    kept: list[Span] = []
    for span in sorted(spans, key=lambda s: (s[0], s[0] - s[1], s[2])):
        if any(k[2] == span[2] and span[0] < k[1] and k[0] < span[1] for k in kept):
            continue
        kept.append(span)
    return kept


class GazetteerTagger:
    """Applies rules in order; output depends only on (rules, input)."""

    def __init__(self, rules: Sequence[GazetteerRule]):
        self.rules = list(rules)

    def tag(self, items: Sequence[ParagraphItem]) -> list[LabelSequence]:
        sequences = []
        for item in items:
            text = paragraph_surface(item)
            spans: list[Span] = []
            for rule in self.rules:
                for m in rule.regex.finditer(text):
                    start, end = m.span(rule.group)
                    if start < end:
                        spans.append((start, end, rule.element_type_id))
            sequence, _notes = encode_bio(
                item.tokens,
                _drop_same_type_overlaps(spans),
                (item.doc_id, item.paragraph_index),
            )
            sequences.append(sequence)
        return sequences
