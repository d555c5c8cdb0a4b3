"""HTTP surface speaking the tag/train wire protocol.

POST /v1/tag?model=TAG   {request_id, schema_elements, items} -> {request_id, items}
POST /v1/train           {request_id, schema_elements, config, train, dev} -> 202 {job_id}
GET  /v1/train/{job_id}  -> {job_id, status, model_tag?, error?, log_tail}

Training occupies the process exclusively: while a job runs, both new
train submissions and tag requests answer 503 so clients back off
instead of competing with the fine-tune for CPU.
"""

import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import EmptyTrainingSet, MalformedItem, SidecarError, UnknownModel
from .registry import ModelRegistry
from .train import TrainConfig, train_model

_BUSY = JSONResponse({"detail": "training in progress"}, status_code=503)


def _require(condition: bool, detail: str) -> None:
    if not condition:
        raise MalformedItem(detail)


def _checked_items(raw: object, with_labels: bool) -> list[dict]:
    _require(isinstance(raw, list), "items must be a list")
    items = []
    for item in raw:
        _require(isinstance(item, dict), "item is not an object")
        _require(isinstance(item.get("doc_id"), str), "doc_id missing")
        _require(isinstance(item.get("paragraph_index"), int), "paragraph_index missing")
        tokens = item.get("tokens")
        _require(
            isinstance(tokens, list) and all(isinstance(t, str) for t in tokens),
            "tokens missing or not strings",
        )
        if with_labels:
            labels = item.get("labels")
            _require(
                isinstance(labels, list) and all(isinstance(x, str) for x in labels),
                "labels missing or not strings",
            )
        items.append(item)
    return items


def create_app(model_dir: Path) -> FastAPI:
    app = FastAPI(title="docelem sidecar", version="1")
    registry = ModelRegistry(model_dir)
    jobs: dict[str, dict] = {}
    train_lock = threading.Lock()
    counter = threading.Lock()
    app.state.registry = registry
    app.state.jobs = jobs
    app.state.train_lock = train_lock

    @app.exception_handler(SidecarError)
    def on_error(_request: Request, exc: SidecarError) -> JSONResponse:
        status = 404 if isinstance(exc, UnknownModel) else 400
        return JSONResponse({"detail": str(exc)}, status_code=status)

    @app.post("/v1/tag")
    async def tag(request: Request, model: str):
        if train_lock.locked():
            return _BUSY
        body = await request.json()
        _require(isinstance(body, dict), "body is not an object")
        _require(isinstance(body.get("request_id"), str), "request_id missing")
        _require(isinstance(body.get("schema_elements"), list), "schema_elements missing")
        items = _checked_items(body.get("items"), with_labels=False)
        runtime = registry.load(model)
        labels = runtime.tag_items(items)
        return {
            "request_id": body["request_id"],
            "items": [
                {
                    "doc_id": item["doc_id"],
                    "paragraph_index": item["paragraph_index"],
                    "labels": row,
                }
                for item, row in zip(items, labels)
            ],
        }

    def run_job(job: dict, elements: list[str], config: TrainConfig, train, dev) -> None:
        # The lock is already held by the submitting request. Publish the
        # terminal status only after dropping it, or a client that polls
        # success and immediately tags could still be answered 503.
        terminal = {"status": "failed", "error": "training worker crashed"}
        try:
            job["status"] = "running"
            trained = train_model(elements, train, dev, config)
            for epoch, loss in enumerate(trained.history["train_loss"], start=1):
                job["log_tail"].append(f"epoch {epoch} train loss {loss:.4f}")
            job["log_tail"].append(f"kept epoch {trained.chosen_epoch} checkpoint")
            terminal = {"model_tag": registry.save(trained), "status": "succeeded"}
        except Exception as exc:
            terminal = {"error": str(exc), "status": "failed"}
        finally:
            train_lock.release()
        job.update(terminal)

    @app.post("/v1/train", status_code=202)
    async def train(request: Request):
        body = await request.json()
        _require(isinstance(body, dict), "body is not an object")
        _require(isinstance(body.get("request_id"), str), "request_id missing")
        elements = body.get("schema_elements")
        _require(
            isinstance(elements, list) and all(isinstance(e, str) for e in elements),
            "schema_elements missing",
        )
        _require(isinstance(body.get("config"), dict), "config missing")
        config = TrainConfig.from_wire(body["config"])
        train_items = _checked_items(body.get("train"), with_labels=True)
        dev_items = _checked_items(body.get("dev"), with_labels=True)
        if not train_items:
            raise EmptyTrainingSet("train set is empty")

        if not train_lock.acquire(blocking=False):
            return _BUSY
        with counter:
            job_id = f"job-{len(jobs) + 1:06d}"
            job = {"job_id": job_id, "status": "queued", "log_tail": []}
            jobs[job_id] = job
        worker = threading.Thread(
            target=run_job,
            args=(job, elements, config, train_items, dev_items),
            daemon=True,
        )
        worker.start()
        return {"job_id": job_id, "status": job["status"]}

    @app.get("/v1/train/{job_id}")
    def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return JSONResponse({"detail": f"unknown job {job_id!r}"}, status_code=404)
        out = {
            "job_id": job["job_id"],
            "status": job["status"],
            "log_tail": list(job["log_tail"])[-20:],
        }
        if "model_tag" in job:
            out["model_tag"] = job["model_tag"]
        if "error" in job:
            out["error"] = job["error"]
        return out

    @app.get("/healthz")
    def healthz() -> Response:
        return Response("ok", media_type="text/plain")

    return app
