"""HTTP client for a model backend speaking the tag/train wire protocol.

Requests are batched and may run with bounded parallelism; responses are
matched by request_id, so completion order does not matter. A failure in
any batch fails the whole call — callers never see partial results.
"""

import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import httpx

from docelem.errors import BackendUnavailable, MalformedResponse
from docelem.textprep import LabelSequence

from .base import ParagraphItem, TaggerRequest
from .wire import (
    sequences_from_response,
    tag_request_to_wire,
    tag_response_from_wire,
    train_request_to_wire,
)

DEFAULT_TIMEOUT = 60.0


def _post_json(
    client: httpx.Client, url: str, payload: dict, request_id: str
) -> object:
    try:
        response = client.post(url, json=payload)
    except httpx.HTTPError as exc:
        raise BackendUnavailable(f"{url}: {exc}") from exc
    if response.status_code == 503:
        raise BackendUnavailable(f"{url}: backend answered 503")
    if response.status_code >= 400:
        raise MalformedResponse(
            request_id, f"{url}: unexpected status {response.status_code}"
        )
    try:
        return response.json()
    except ValueError as exc:
        raise MalformedResponse(request_id, f"{url}: body is not JSON") from exc


class RemoteTagger:
    """Tagger backed by POST {base_url}/v1/tag?model={model_tag}."""

    def __init__(
        self,
        base_url: str,
        model_tag: str,
        schema_elements: Sequence[str],
        batch_size: int = 16,
        parallelism: int = 4,
        timeout: float = DEFAULT_TIMEOUT,
        client: httpx.Client | None = None,
    ):
        if batch_size < 1 or parallelism < 1:
            raise ValueError("batch_size and parallelism must be positive")
        self.base_url = base_url.rstrip("/")
        self.model_tag = model_tag
        self.schema_elements = list(schema_elements)
        self.batch_size = batch_size
        self.parallelism = parallelism
        self._client = client or httpx.Client(timeout=timeout)

    def _tag_batch(self, batch: Sequence[ParagraphItem]) -> list[LabelSequence]:
        request = TaggerRequest(uuid.uuid4().hex, tuple(batch))
        url = f"{self.base_url}/v1/tag"
        payload = tag_request_to_wire(request, self.schema_elements)
        body = _post_json(
            self._client,
            f"{url}?model={self.model_tag}",
            payload,
            request.request_id,
        )
        response = tag_response_from_wire(body, request, self.schema_elements)
        return sequences_from_response(request, response)

    def tag(self, items: Sequence[ParagraphItem]) -> list[LabelSequence]:
        if not items:
            return []
        batches = [
            items[i : i + self.batch_size]
            for i in range(0, len(items), self.batch_size)
        ]
        if len(batches) == 1:
            return self._tag_batch(batches[0])
        with ThreadPoolExecutor(min(self.parallelism, len(batches))) as pool:
            results = list(pool.map(self._tag_batch, batches))
        return [sequence for result in results for sequence in result]

    def close(self) -> None:
        self._client.close()


class RemoteTrainer:
    """Client for POST /v1/train and its job-status endpoint."""

    def __init__(
        self,
        base_url: str,
        timeout: float = DEFAULT_TIMEOUT,
        client: httpx.Client | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout)

    def submit(
        self,
        schema_elements: Sequence[str],
        config: dict,
        train_items: list[dict],
        dev_items: list[dict],
    ) -> str:
        """Submit a training job; returns the backend's job_id."""
        request_id = uuid.uuid4().hex
        payload = train_request_to_wire(
            request_id, schema_elements, config, train_items, dev_items
        )
        body = _post_json(
            self._client, f"{self.base_url}/v1/train", payload, request_id
        )
        if not isinstance(body, dict) or not isinstance(body.get("job_id"), str):
            raise MalformedResponse(request_id, "train response lacks job_id")
        return body["job_id"]

    def status(self, job_id: str) -> dict:
        """{job_id, status, model_tag?, error?, log_tail}."""
        url = f"{self.base_url}/v1/train/{job_id}"
        try:
            response = self._client.get(url)
        except httpx.HTTPError as exc:
            raise BackendUnavailable(f"{url}: {exc}") from exc
        if response.status_code == 503:
            raise BackendUnavailable(f"{url}: backend answered 503")
        if response.status_code >= 400:
            raise MalformedResponse(job_id, f"{url}: status {response.status_code}")
        try:
            body = response.json()
        except ValueError as exc:
            raise MalformedResponse(job_id, f"{url}: body is not JSON") from exc
        if not isinstance(body, dict) or body.get("job_id") != job_id:
            raise MalformedResponse(job_id, "job status for a different job")
        if body.get("status") not in ("queued", "running", "succeeded", "failed"):
            raise MalformedResponse(job_id, f"unknown status {body.get('status')!r}")
        return body

    def wait(self, job_id: str, poll_seconds: float = 0.5, max_polls: int = 7200) -> dict:
        """Poll until the job leaves queued/running; returns the final status."""
        import time

        for _ in range(max_polls):
            body = self.status(job_id)
            if body["status"] in ("succeeded", "failed"):
                return body
            time.sleep(poll_seconds)
        raise BackendUnavailable(f"job {job_id} still running after {max_polls} polls")

    def close(self) -> None:
        self._client.close()
