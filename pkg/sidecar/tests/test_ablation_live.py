"""Data-efficiency ablation driven through a live server process.

The primary package plans the subsets, posts the training jobs over
HTTP, and scores the fixed test split; this backend does the learning.
Slowest test in the suite (three fine-tunes back to back, a couple of
minutes on a laptop CPU).
"""

import threading
import time

import pytest
import uvicorn

from docelem.ablation import AblationPlan, SidecarTrainer, run_ablation
from docelem.corpus import generate_synthetic_corpus
from docelem.corpus.split import split_corpus
from docelem.demo import domain_parts

from docelem_sidecar import create_app


@pytest.fixture()
def live_backend(tmp_path):
    config = uvicorn.Config(
        create_app(tmp_path / "models"),
        host="127.0.0.1",
        port=0,
        log_level="warning",
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10.0
    while not server.started:
        assert time.monotonic() < deadline, "backend did not come up"
        time.sleep(0.02)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=10.0)


def test_more_training_documents_never_cost_five_points(live_backend):
    schema, templates, kinds, _ = domain_parts("lease", template_count=75, seed=11)
    corpus = generate_synthetic_corpus(
        schema, templates, instances_per_template=(2, 2), seed=13, element_kinds=kinds
    )
    corpus = split_corpus(corpus, seed=29)
    assert len(corpus.documents) == 150
    assert len(corpus.split_doc_ids("train")) == 90

    plan = AblationPlan(
        corpus,
        sizes=(30, 60, 90),
        seed=19,
        trainer=SidecarTrainer(live_backend, poll_seconds=0.2),
    )
    result = run_ablation(plan)

    scores = {size: result.micro_f1(size) for size in (30, 60, 90)}
    assert all(f1 is not None for f1 in scores.values()), scores
    assert all(0.0 <= f1 <= 1.0 for f1 in scores.values()), scores
    assert scores[90] >= scores[30] - 0.05, scores
