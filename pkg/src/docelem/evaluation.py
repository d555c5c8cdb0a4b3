"""Document-level set-based exact-match evaluation.

Predictions and gold are compared per document as deduplicated sets of
(element_type_id, surface string) pairs. A prediction counts only on exact
string equality; one extraneous character costs both a false positive and
a false negative. Counts are pooled corpus-wide per type, and the micro
average pools across types — per-document averaging is deliberately not
offered, since reports are corpus-level.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Sequence

from docelem.errors import DocIdMismatch, EmptySubset

MICRO_KEY = "__micro__"


@dataclass(frozen=True)
class EntitySet:
    """A document's deduplicated entities: (element_type_id, surface) pairs."""

    doc_id: str
    entries: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "entries", frozenset(self.entries))


@dataclass
class TypeCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0


@dataclass
class EvalReport:
    per_type: dict[str, TypeCounts] = field(default_factory=dict)
    micro: TypeCounts = field(default_factory=TypeCounts)
    subset_label: str = "all"


def _index(sets: Iterable[EntitySet], name: str) -> dict[str, EntitySet]:
    out: dict[str, EntitySet] = {}
    for s in sets:
        if s.doc_id in out:
            raise DocIdMismatch(f"duplicate doc_id {s.doc_id!r} in {name} sets")
        out[s.doc_id] = s
    return out


def evaluate(
    predicted: Iterable[EntitySet],
    gold: Iterable[EntitySet],
    subset_label: str = "all",
) -> EvalReport:
    """Score predictions against gold over the same documents."""
    pred_by_doc = _index(predicted, "predicted")
    gold_by_doc = _index(gold, "gold")
    if set(pred_by_doc) != set(gold_by_doc):
        missing = set(gold_by_doc) ^ set(pred_by_doc)
        raise DocIdMismatch(
            f"predicted and gold cover different documents: {sorted(missing)[:5]}"
        )

    report = EvalReport(subset_label=subset_label)
    for doc_id, gold_set in gold_by_doc.items():
        pred_set = pred_by_doc[doc_id]
        types = {t for t, _ in gold_set.entries} | {t for t, _ in pred_set.entries}
        for etype in types:
            p = {s for t, s in pred_set.entries if t == etype}
            g = {s for t, s in gold_set.entries if t == etype}
            counts = report.per_type.setdefault(etype, TypeCounts())
            counts.tp += len(p & g)
            counts.fp += len(p - g)
            counts.fn += len(g - p)
    for counts in report.per_type.values():
        report.micro.tp += counts.tp
        report.micro.fp += counts.fp
        report.micro.fn += counts.fn
    return report


def evaluate_subset(
    predicted: Iterable[EntitySet],
    gold: Iterable[EntitySet],
    doc_filter: Callable[[str], bool] | Collection[str],
    subset_label: str = "custom",
) -> EvalReport:
    """Evaluate restricted to the documents selected by *doc_filter*."""
    if callable(doc_filter):
        selected = doc_filter
    else:
        wanted = set(doc_filter)
        selected = wanted.__contains__
    pred = [s for s in predicted if selected(s.doc_id)]
    gold_sel = [s for s in gold if selected(s.doc_id)]
    if not gold_sel:
        raise EmptySubset("document filter selected no documents")
    return evaluate(pred, gold_sel, subset_label=subset_label)


def render_report(
    report: EvalReport,
    format: str = "table",
    type_order: Sequence[str] | None = None,
) -> str:
    """Render as an aligned table (2-decimal), CSV, or JSON.

    The table lists the micro "All" row first, mirroring how results are
    usually presented; the CSV keeps full precision and ends with the
    ``__micro__`` row.
    """
    order = list(type_order) if type_order is not None else sorted(report.per_type)
    order = [t for t in order if t in report.per_type]

    if format == "table":
        rows = [("", "F1", "P", "R")]
        rows.append(("All", *(f"{v:.2f}" for v in
                              (report.micro.f1, report.micro.precision, report.micro.recall))))
        for etype in order:
            c = report.per_type[etype]
            rows.append((etype, f"{c.f1:.2f}", f"{c.precision:.2f}", f"{c.recall:.2f}"))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        return "\n".join(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
            for row in rows
        )

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["type_id", "tp", "fp", "fn", "precision", "recall", "f1"])
        for etype in order:
            c = report.per_type[etype]
            writer.writerow([etype, c.tp, c.fp, c.fn, repr(c.precision), repr(c.recall), repr(c.f1)])
        m = report.micro
        writer.writerow([MICRO_KEY, m.tp, m.fp, m.fn, repr(m.precision), repr(m.recall), repr(m.f1)])
        return buf.getvalue()

    if format == "json":
        def counts_dict(c: TypeCounts) -> dict:
            return {
                "tp": c.tp, "fp": c.fp, "fn": c.fn,
                "precision": c.precision, "recall": c.recall, "f1": c.f1,
            }

        return json.dumps(
            {
                "subset_label": report.subset_label,
                "per_type": {t: counts_dict(report.per_type[t]) for t in order},
                "micro": counts_dict(report.micro),
            },
            ensure_ascii=False,
            indent=2,
        )

    raise ValueError(f"unknown report format {format!r}")
