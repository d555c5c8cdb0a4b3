"""HTTP surface of the annotation platform.

Endpoints (JSON, UTF-8; all offsets are Unicode code-point offsets):

    POST   /v1/documents                      upload plain text
    GET    /v1/documents/{id}
    POST   /v1/documents/{id}/annotations
    GET    /v1/documents/{id}/annotations
    DELETE /v1/annotations/{id}
    GET    /v1/schemas
    PUT    /v1/schemas/{name}
    POST   /v1/train
    GET    /v1/jobs/{id}
    POST   /v1/documents/{id}/infer?model=<tag>

The service runs fully without a model backend: `model=gazetteer` uses the
pattern tagger (rules from DOCELEM_GAZETTEER, else derived from stored gold
annotations), and only POST /v1/train requires the sidecar.
"""

import subprocess

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from docelem.errors import (
    BackendUnavailable,
    ConcurrentJobConflict,
    DocelemError,
    EmptyDocument,
    MalformedResponse,
    OverlapConflict,
    SchemaMismatch,
    SpanOutOfRange,
    UnknownDocument,
    UnknownElementType,
    UnknownModel,
    UnsupportedMediaType,
)
from docelem.normalize import postprocess
from docelem.taggers import (
    GazetteerTagger,
    RemoteTagger,
    RemoteTrainer,
    extract_highlights,
    parse_gazetteer_config,
    rules_from_annotations,
    train_items_from_corpus,
)

from .config import ServiceConfig
from .jobs import JobManager
from .store import Store, schema_from_payload, schema_payload

_STATUS = {
    UnknownDocument: 404,
    UnknownModel: 404,
    OverlapConflict: 409,
    ConcurrentJobConflict: 409,
    SchemaMismatch: 409,
    UnsupportedMediaType: 415,
    EmptyDocument: 400,
    SpanOutOfRange: 400,
    UnknownElementType: 400,
    BackendUnavailable: 503,
    MalformedResponse: 502,
}

DEFAULT_TRAIN_CONFIG = {
    "max_len": 256,
    "learning_rate": 1e-4,
    "epochs": 8,
    "encoder": "tiny",
}

_TEXT_TYPES = ("text/plain", "text/plain; charset=utf-8")


def _default_schema():
    from docelem.demo import lease_schema, lease_typing_rules

    return lease_schema(), lease_typing_rules()


def create_app(config: ServiceConfig) -> FastAPI:
    schema, rules = _default_schema()
    store = Store(config.data_dir, schema, rules)
    jobs = JobManager()
    app = FastAPI(title="docelem service", version="1")
    app.state.store = store
    app.state.jobs = jobs
    app.state.config = config
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(DocelemError)
    def docelem_error(_request: Request, exc: DocelemError) -> JSONResponse:
        status = next(
            (code for cls, code in _STATUS.items() if isinstance(exc, cls)), 400
        )
        return JSONResponse(
            {"error": type(exc).__name__, "detail": str(exc)}, status_code=status
        )

    def _to_text(body: bytes, content_type: str) -> str:
        base_type = content_type.split(";")[0].strip().lower() or "text/plain"
        if base_type == "text/plain":
            try:
                return body.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise UnsupportedMediaType(f"body is not valid UTF-8: {exc}") from exc
        if config.converter_command:
            proc = subprocess.run(
                config.converter_command,
                shell=True,
                input=body,
                capture_output=True,
                check=False,
            )
            if proc.returncode != 0:
                raise UnsupportedMediaType(
                    f"converter failed with status {proc.returncode}"
                )
            return proc.stdout.decode("utf-8", errors="replace")
        raise UnsupportedMediaType(f"no converter for {base_type!r}")

    @app.post("/v1/documents")
    async def upload_document(request: Request) -> dict:
        body = await request.body()
        if not body or not body.strip():
            raise EmptyDocument("empty upload body")
        text = _to_text(body, request.headers.get("content-type", "text/plain"))
        split = request.query_params.get("split", "unassigned")
        doc_id, paragraph_count = store.add_document(text, split=split)
        return {"doc_id": doc_id, "paragraph_count": paragraph_count}

    @app.get("/v1/documents/{doc_id}")
    def get_document(doc_id: str) -> dict:
        doc = store.document(doc_id)
        return {
            "doc_id": doc.doc_id,
            "text": doc.text,
            "paragraphs": [list(p) for p in doc.paragraphs],
            "split": doc.split,
        }

    def _annotation_payload(ann) -> dict:
        return {
            "id": ann.ann_id,
            "doc_id": ann.doc_id,
            "element_type_id": ann.element_type_id,
            "start": ann.start,
            "end": ann.end,
            "source": ann.source,
        }

    @app.post("/v1/documents/{doc_id}/annotations", status_code=201)
    async def create_annotation(doc_id: str, request: Request) -> dict:
        body = await request.json()
        try:
            element_type_id = body["element_type_id"]
            start, end = int(body["start"]), int(body["end"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpanOutOfRange(f"bad annotation body: {exc}") from exc
        ann = store.add_annotation(doc_id, element_type_id, start, end)
        return _annotation_payload(ann)

    @app.get("/v1/documents/{doc_id}/annotations")
    def list_annotations(doc_id: str) -> list[dict]:
        return [_annotation_payload(a) for a in store.annotations(doc_id)]

    @app.delete("/v1/annotations/{ann_id}")
    def delete_annotation(ann_id: str) -> dict:
        store.delete_annotation(ann_id)
        return {"deleted": ann_id}

    @app.get("/v1/schemas")
    def get_schemas() -> dict:
        return {"schemas": [schema_payload(store.schema, store.typing_rules)]}

    @app.put("/v1/schemas/{name}")
    async def put_schema(name: str, request: Request) -> dict:
        new_schema, new_rules = schema_from_payload(name, await request.json())
        store.set_schema(new_schema, new_rules)
        return schema_payload(store.schema, store.typing_rules)

    def _gazetteer() -> GazetteerTagger:
        if config.gazetteer_path is not None:
            text = config.gazetteer_path.read_text(encoding="utf-8")
            return GazetteerTagger(parse_gazetteer_config(text))
        corpus = store.corpus
        annotated = sorted({a.doc_id for a in corpus.annotations})
        return GazetteerTagger(rules_from_annotations(corpus, annotated))

    @app.post("/v1/documents/{doc_id}/infer")
    def infer(doc_id: str, model: str = Query(...)) -> dict:
        doc = store.document(doc_id)
        if model == "gazetteer":
            tagger = _gazetteer()
        elif config.sidecar_url:
            tagger = RemoteTagger(
                config.sidecar_url, model, list(store.schema.element_ids)
            )
        else:
            raise UnknownModel(
                f"model {model!r} unknown; no backend configured and the "
                f"builtin tagger is named 'gazetteer'"
            )
        highlights = extract_highlights(doc, tagger)
        entities = {
            (h["element_type_id"], h["surface"].strip())
            for h in highlights
            if h["surface"].strip()
        }
        record = postprocess(entities, store.typing_rules)
        return {
            "doc_id": doc_id,
            "model": model,
            "highlights": highlights,
            "normalized": record.as_json_dict(),
        }

    @app.post("/v1/train", status_code=202)
    async def start_training(request: Request) -> dict:
        if not config.sidecar_url:
            raise BackendUnavailable("no model backend configured")
        body = await request.json() if await request.body() else {}
        train_config = {**DEFAULT_TRAIN_CONFIG, **(body.get("config") or {})}
        corpus = store.corpus
        train_ids = body.get("train_doc_ids") or sorted(
            corpus.split_doc_ids("train")
        ) or sorted({a.doc_id for a in corpus.annotations})
        dev_ids = body.get("dev_doc_ids") or sorted(corpus.split_doc_ids("dev"))
        if not train_ids:
            raise EmptyDocument("no annotated or train-split documents to train on")
        elements = list(corpus.schema.element_ids)
        train_items = train_items_from_corpus(corpus, train_ids)
        dev_items = train_items_from_corpus(corpus, dev_ids)

        def work(job) -> str:
            trainer = RemoteTrainer(config.sidecar_url)
            try:
                backend_job = trainer.submit(
                    elements, train_config, train_items, dev_items
                )
                job.log_tail.append(f"backend job {backend_job}")
                final = trainer.wait(backend_job)
            finally:
                trainer.close()
            job.log_tail.extend(final.get("log_tail") or [])
            if final["status"] != "succeeded" or not final.get("model_tag"):
                raise BackendUnavailable(
                    final.get("error") or "training ended without a model tag"
                )
            return final["model_tag"]

        job = jobs.submit(work)
        return {"job_id": job.job_id, "status": job.status, "config": train_config}

    @app.get("/v1/jobs/{job_id}")
    def get_job(job_id: str) -> dict:
        job = jobs.get(job_id)
        if job is None:
            raise UnknownDocument(f"no job {job_id!r}")
        return job.as_json_dict()

    @app.get("/healthz")
    def healthz() -> Response:
        return Response("ok", media_type="text/plain")

    return app
