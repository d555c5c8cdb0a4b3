"""Wire-contract checks for the HTTP surface, including compatibility
with the primary package's remote client."""

import time

import pytest
from fastapi.testclient import TestClient

from docelem_sidecar import create_app

ELEMENTS = ["lessor", "rent"]

TRAIN_ITEMS = [
    {
        "doc_id": "d1",
        "paragraph_index": 0,
        "tokens": ["出", "租", "方", "：", "张", "伟"],
        "labels": ["O", "O", "O", "O", "B-lessor", "I-lessor"],
    },
    {
        "doc_id": "d1",
        "paragraph_index": 1,
        "tokens": ["租", "金", "3", "万", "元"],
        "labels": ["O", "O", "B-rent", "I-rent", "I-rent"],
    },
] * 8  # repeated so one epoch has a few batches

DEV_ITEMS = TRAIN_ITEMS[:2]

SMALL_CONFIG = {"epochs": 6, "batch_size": 4, "max_len": 32, "learning_rate": 3e-3}


@pytest.fixture()
def client(tmp_path):
    with TestClient(create_app(tmp_path / "models")) as c:
        yield c


def _train_to_completion(client, config=None, train=None) -> dict:
    accepted = client.post(
        "/v1/train",
        json={
            "request_id": "r-train",
            "schema_elements": ELEMENTS,
            "config": config or SMALL_CONFIG,
            "train": TRAIN_ITEMS if train is None else train,
            "dev": DEV_ITEMS,
        },
    )
    assert accepted.status_code == 202, accepted.text
    job_id = accepted.json()["job_id"]
    deadline = time.monotonic() + 120
    while time.monotonic() < deadline:
        body = client.get(f"/v1/train/{job_id}").json()
        if body["status"] in ("succeeded", "failed"):
            return body
        time.sleep(0.05)
    raise AssertionError("training never finished")


def test_health(client):
    assert client.get("/healthz").text == "ok"


def test_train_then_tag_round_trip(client):
    job = _train_to_completion(client)
    assert job["status"] == "succeeded", job
    assert job["model_tag"].startswith("m-")
    assert any("epoch 1 train loss" in line for line in job["log_tail"])
    assert any(line.startswith("kept epoch") for line in job["log_tail"])

    response = client.post(
        f"/v1/tag?model={job['model_tag']}",
        json={
            "request_id": "r-tag",
            "schema_elements": ELEMENTS,
            "items": [
                {"doc_id": "x", "paragraph_index": 4, "tokens": ["租", "金", "3", "万", "元"]},
                {"doc_id": "y", "paragraph_index": 0, "tokens": ["出", "租", "方", "：", "张", "伟"]},
            ],
        },
    )
    assert response.status_code == 200, response.text
    body = response.json()
    assert body["request_id"] == "r-tag"
    assert [it["doc_id"] for it in body["items"]] == ["x", "y"]
    assert [it["paragraph_index"] for it in body["items"]] == [4, 0]
    alphabet = {"O", "B-lessor", "I-lessor", "B-rent", "I-rent"}
    for item, n in zip(body["items"], (5, 6)):
        assert len(item["labels"]) == n
        assert set(item["labels"]) <= alphabet

    # six brisk epochs on this memorizable pair recover the labels
    assert body["items"][0]["labels"] == ["O", "O", "B-rent", "I-rent", "I-rent"]
    assert body["items"][1]["labels"] == ["O", "O", "O", "O", "B-lessor", "I-lessor"]


def test_tag_unknown_model_is_404(client):
    response = client.post(
        "/v1/tag?model=m-missing",
        json={"request_id": "r", "schema_elements": ELEMENTS, "items": []},
    )
    assert response.status_code == 404
    assert "m-missing" in response.json()["detail"]


def test_tag_rejects_malformed_bodies(client):
    no_request_id = client.post(
        "/v1/tag?model=m-x",
        json={"schema_elements": ELEMENTS, "items": []},
    )
    assert no_request_id.status_code == 400

    job = _train_to_completion(client)
    empty_tokens = client.post(
        f"/v1/tag?model={job['model_tag']}",
        json={
            "request_id": "r",
            "schema_elements": ELEMENTS,
            "items": [{"doc_id": "d", "paragraph_index": 0, "tokens": []}],
        },
    )
    assert empty_tokens.status_code == 400
    assert "empty token" in empty_tokens.json()["detail"]


def test_train_rejects_unknown_config_keys(client):
    response = client.post(
        "/v1/train",
        json={
            "request_id": "r",
            "schema_elements": ELEMENTS,
            "config": {"epochs": 1, "warmup": 10},
            "train": TRAIN_ITEMS,
            "dev": [],
        },
    )
    assert response.status_code == 400
    assert "warmup" in response.json()["detail"]


def test_train_rejects_empty_training_set(client):
    response = client.post(
        "/v1/train",
        json={
            "request_id": "r",
            "schema_elements": ELEMENTS,
            "config": SMALL_CONFIG,
            "train": [],
            "dev": [],
        },
    )
    assert response.status_code == 400
    assert "empty" in response.json()["detail"]


def test_bad_labels_fail_the_job_with_an_error(client):
    bad = [dict(TRAIN_ITEMS[0], labels=["O", "O", "O", "O", "B-price", "I-price"])]
    job = _train_to_completion(client, train=bad)
    assert job["status"] == "failed"
    assert "B-price" in job["error"]


def test_unknown_job_is_404(client):
    assert client.get("/v1/train/job-999999").status_code == 404


def test_everything_answers_503_while_training_holds_the_process(client):
    lock = client.app.state.train_lock
    assert lock.acquire(blocking=False)
    try:
        tag = client.post(
            "/v1/tag?model=m-x",
            json={"request_id": "r", "schema_elements": ELEMENTS, "items": []},
        )
        assert tag.status_code == 503
        train = client.post(
            "/v1/train",
            json={
                "request_id": "r",
                "schema_elements": ELEMENTS,
                "config": SMALL_CONFIG,
                "train": TRAIN_ITEMS,
                "dev": [],
            },
        )
        assert train.status_code == 503
    finally:
        lock.release()


def test_primary_package_clients_interoperate(client, tmp_path):
    """Drive the server with the primary package's own trainer and tagger
    clients, then decode the labels back into character spans."""
    from docelem.taggers import RemoteTagger, RemoteTrainer
    from docelem.taggers.base import ParagraphItem
    from docelem.textprep import decode_bio, tokenize

    trainer = RemoteTrainer("http://testserver", client=client)
    job_id = trainer.submit(ELEMENTS, SMALL_CONFIG, TRAIN_ITEMS, DEV_ITEMS)
    final = trainer.wait(job_id, poll_seconds=0.05, max_polls=2400)
    assert final["status"] == "succeeded", final

    text = "租金3万元"
    tagger = RemoteTagger(
        "http://testserver", final["model_tag"], ELEMENTS, client=client
    )
    sequences = tagger.tag([ParagraphItem("doc", 0, tuple(tokenize(text)))])
    spans = decode_bio(sequences[0])
    assert spans == [(2, 5, "rent")]
    surface = text[spans[0][0] : spans[0][1]]
    assert surface == "3万元"
