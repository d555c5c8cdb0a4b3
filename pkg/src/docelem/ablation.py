"""Data-efficiency ablations: train on growing subsets, plot F1 vs size.

The dev and test splits never move; only the training subset grows. By
default subsets are nested (the 30-doc subset is contained in the 60-doc
subset for the same seed) so desk-scale curves are monotone-interpretable;
independent resampling per size is available via ``mode="independent"``.
"""

import csv
import hashlib
import io
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Protocol, Sequence

from docelem.errors import BackendUnavailable, IoFailure, SubsetTooLarge
from docelem.evaluation import MICRO_KEY, evaluate
from docelem.taggers import (
    GazetteerTagger,
    RemoteTagger,
    RemoteTrainer,
    Tagger,
    extract_entity_sets,
    rules_from_annotations,
    train_items_from_corpus,
)

if TYPE_CHECKING:  # pragma: no cover
    from docelem.corpus.types import Corpus

FAILED_KEY = "__failed__"

SAMPLING_MODES = ("nested", "independent")


def _subset_key(seed: int, mode: str, size: int, doc_id: str) -> str:
    salt = f"{seed}|subset|{doc_id}" if mode == "nested" else f"{seed}|{size}|{doc_id}"
    return hashlib.sha256(salt.encode("utf-8")).hexdigest()


def sample_training_subset(
    corpus: "Corpus", n: int, seed: int, mode: str = "nested"
) -> list[str]:
    """Uniform sample of n document ids from the train split only.

    Sampling is a pure function of (corpus, n, seed, mode). Nested mode
    orders the whole train split by a per-document hash and takes a prefix,
    which makes smaller subsets prefixes of larger ones.
    """
    if mode not in SAMPLING_MODES:
        raise ValueError(f"unknown sampling mode {mode!r}")
    train_ids = sorted(corpus.split_doc_ids("train"))
    if n > len(train_ids):
        raise SubsetTooLarge(f"requested {n} of {len(train_ids)} training documents")
    if n < 0:
        raise ValueError("subset size must be non-negative")
    ordered = sorted(train_ids, key=lambda d: _subset_key(seed, mode, n, d))
    return ordered[:n]


class SubsetTrainer(Protocol):
    """Trains on a document subset and hands back a ready tagger."""

    def train(self, corpus: "Corpus", doc_ids: Sequence[str]) -> Tagger: ...


class GazetteerStandInTrainer:
    """Model-free trainer: derives pattern rules from the subset's gold spans.

    Rule coverage grows with the subset, so it exercises the harness the
    way a real learner would, deterministically and in milliseconds.
    """

    def train(self, corpus: "Corpus", doc_ids: Sequence[str]) -> Tagger:
        return GazetteerTagger(rules_from_annotations(corpus, doc_ids))


@dataclass
class SidecarTrainer:
    """Delegates training to the remote backend, returns a RemoteTagger."""

    base_url: str
    config: dict = field(
        default_factory=lambda: {
            "max_len": 256,
            "learning_rate": 1e-4,
            "epochs": 8,
            "encoder": "tiny",
        }
    )
    poll_seconds: float = 0.5

    def train(self, corpus: "Corpus", doc_ids: Sequence[str]) -> Tagger:
        elements = list(corpus.schema.element_ids)
        trainer = RemoteTrainer(self.base_url)
        try:
            job_id = trainer.submit(
                elements,
                self.config,
                train_items_from_corpus(corpus, doc_ids),
                train_items_from_corpus(corpus, sorted(corpus.split_doc_ids("dev"))),
            )
            final = trainer.wait(job_id, poll_seconds=self.poll_seconds)
        finally:
            trainer.close()
        if final["status"] != "succeeded" or not final.get("model_tag"):
            raise BackendUnavailable(
                f"training job {job_id} failed: {final.get('error') or 'no model tag'}"
            )
        return RemoteTagger(self.base_url, final["model_tag"], elements)


@dataclass(frozen=True)
class AblationPlan:
    corpus: "Corpus"
    sizes: tuple[int, ...]
    seed: int
    trainer: SubsetTrainer
    mode: str = "nested"

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ValueError("plan has no sizes")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError(f"sizes must be strictly ascending: {self.sizes}")
        if self.mode not in SAMPLING_MODES:
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        n_train = len(self.corpus.split_doc_ids("train"))
        if self.sizes[-1] > n_train:
            raise SubsetTooLarge(
                f"largest size {self.sizes[-1]} exceeds {n_train} training documents"
            )


@dataclass(frozen=True)
class AblationRow:
    size: int
    type_id: str  # element type, __micro__, or __failed__
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass
class AblationResult:
    rows: list[AblationRow]
    seed: int
    started_at: float
    finished_at: float

    def micro_f1(self, size: int) -> float | None:
        for row in self.rows:
            if row.size == size and row.type_id == MICRO_KEY:
                return row.f1
        return None


def run_ablation(plan: AblationPlan) -> AblationResult:
    """Train at every plan size and score the fixed test split.

    A size whose training fails with BackendUnavailable is recorded as a
    failed row and the run continues; any other exception propagates.
    """
    from docelem.corpus.types import gold_entity_sets
    from docelem.evaluation import EntitySet

    corpus = plan.corpus
    test_ids = sorted(corpus.split_doc_ids("test"))
    gold_by_doc = gold_entity_sets(corpus)
    gold = [EntitySet(doc_id, frozenset(gold_by_doc[doc_id])) for doc_id in test_ids]

    started = time.time()
    rows: list[AblationRow] = []
    for size in plan.sizes:
        subset = sample_training_subset(corpus, size, plan.seed, plan.mode)
        try:
            tagger = plan.trainer.train(corpus, subset)
            predicted = extract_entity_sets(corpus, test_ids, tagger)
        except BackendUnavailable:
            rows.append(AblationRow(size, FAILED_KEY, None, None, None))
            continue
        report = evaluate(predicted, gold, subset_label=f"size-{size}")
        for etype in sorted(report.per_type):
            c = report.per_type[etype]
            rows.append(AblationRow(size, etype, c.precision, c.recall, c.f1))
        m = report.micro
        rows.append(AblationRow(size, MICRO_KEY, m.precision, m.recall, m.f1))
    return AblationResult(rows, plan.seed, started, time.time())


def render_curves_csv(result: AblationResult) -> str:
    """CSV text for the result; a pure function of the rows."""
    if not result.rows:
        raise ValueError("empty ablation result")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "type", "precision", "recall", "f1"])
    for row in result.rows:
        if row.type_id == FAILED_KEY:
            writer.writerow([row.size, FAILED_KEY, "", "", ""])
        else:
            writer.writerow(
                [row.size, row.type_id, repr(row.precision), repr(row.recall), repr(row.f1)]
            )
    return buf.getvalue()


def emit_curves(result: AblationResult, out_dir: str | Path) -> tuple[Path, Path]:
    """Write curves.csv and curves.svg under *out_dir*.

    The CSV is byte-identical across reruns of the same plan and seed; the
    plot is stripped of timestamps for the same reason.
    """
    csv_text = render_curves_csv(result)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "curves.csv"
        csv_path.write_text(csv_text, encoding="utf-8")
        svg_path = out / "curves.svg"
        _plot(result, svg_path)
    except OSError as exc:
        raise IoFailure(f"cannot write curves under {out}: {exc}") from exc
    return csv_path, svg_path


def _plot(result: AblationResult, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict[str, list[tuple[int, float]]] = {}
    for row in result.rows:
        if row.type_id != FAILED_KEY and row.f1 is not None:
            series.setdefault(row.type_id, []).append((row.size, row.f1))

    with matplotlib.rc_context({"svg.hashsalt": "curves"}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for type_id in sorted(series):
            points = sorted(series[type_id])
            xs, ys = zip(*points)
            if type_id == MICRO_KEY:
                ax.plot(xs, ys, marker="o", linewidth=2.2, color="black", label="micro")
            else:
                ax.plot(xs, ys, marker=".", linewidth=1.0, alpha=0.7, label=type_id)
        ax.set_xlabel("training documents")
        ax.set_ylabel("F1")
        ax.set_ylim(0.0, 1.05)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=7, loc="lower right")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
