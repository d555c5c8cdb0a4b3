"""Training-job control: a strict state machine with an audit log.

Exactly one job may be queued or running per service instance (the store
holds one corpus). Transitions are queued→running→{succeeded, failed},
nothing else; every transition is appended to the job's audit log so the
history can be checked after the fact.
"""

import threading
import time
import uuid
from dataclasses import dataclass, field

from docelem.errors import BackendUnavailable, ConcurrentJobConflict

_ALLOWED = {
    ("queued", "running"),
    ("running", "succeeded"),
    ("running", "failed"),
}

TERMINAL = ("succeeded", "failed")


@dataclass
class TrainingJob:
    job_id: str
    status: str = "queued"
    model_tag: str | None = None
    error: str | None = None
    log_tail: list[str] = field(default_factory=list)
    transitions: list[tuple[str, str, float]] = field(default_factory=list)

    def transition(self, new_status: str) -> None:
        if (self.status, new_status) not in _ALLOWED:
            raise RuntimeError(
                f"illegal job transition {self.status!r} -> {new_status!r}"
            )
        self.transitions.append((self.status, new_status, time.time()))
        self.status = new_status

    def as_json_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "status": self.status,
            "model_tag": self.model_tag,
            "error": self.error,
            "log_tail": list(self.log_tail),
            "transitions": [
                {"from": a, "to": b, "at": at} for a, b, at in self.transitions
            ],
        }


class JobManager:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict[str, TrainingJob] = {}

    def get(self, job_id: str) -> TrainingJob | None:
        with self._lock:
            return self._jobs.get(job_id)

    def submit(self, work) -> TrainingJob:
        """Create a job and run ``work(job)`` on a daemon thread.

        ``work`` must move the job to running itself and return the model
        tag; raising marks the job failed. A second submit while a job is
        still live raises ConcurrentJobConflict.
        """
        with self._lock:
            live = next(
                (j for j in self._jobs.values() if j.status not in TERMINAL), None
            )
            if live is not None:
                raise ConcurrentJobConflict(
                    f"job {live.job_id} is {live.status}; one training job at a time"
                )
            job = TrainingJob(f"job-{uuid.uuid4().hex[:12]}")
            self._jobs[job.job_id] = job

        def run():
            try:
                job.transition("running")
                job.model_tag = work(job)
                job.transition("succeeded")
            except BackendUnavailable as exc:
                job.error = f"backend unavailable: {exc}"
                job.transition("failed")
            except Exception as exc:  # noqa: BLE001 - job surface, not a crash
                job.error = str(exc)
                job.transition("failed")

        threading.Thread(target=run, name=job.job_id, daemon=True).start()
        return job
