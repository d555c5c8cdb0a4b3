"""Model store: one directory per model_tag, loaded lazily and cached.

A saved model is a single torch archive holding the state dict plus
everything needed to rebuild the runtime (vocab characters, label
alphabet, framing config).
"""

import threading
import uuid
from pathlib import Path
from typing import Sequence

import torch

from .errors import UnknownModel
from .framing import frame_item
from .model import build_model
from .train import TrainConfig, TrainedModel
from .vocab import Vocab


class TaggingRuntime:
    """A trained model ready to label wire items."""

    def __init__(self, trained: TrainedModel):
        self._trained = trained
        self._model = trained.model
        self._model.eval()

    @property
    def alphabet(self) -> list[str]:
        return list(self._trained.alphabet)

    def tag_items(self, items: Sequence[dict], batch_size: int = 64) -> list[list[str]]:
        """One label per canonical token, first-character readout."""
        config = self._trained.config
        frames = [
            frame_item(self._trained.vocab, item["tokens"], config.max_len)
            for item in items
        ]
        out: list[list[str]] = []
        with torch.no_grad():
            for i in range(0, len(frames), batch_size):
                chunk = frames[i : i + batch_size]
                ids = torch.stack([f.input_ids for f in chunk])
                pads = torch.stack([f.pad_mask for f in chunk])
                predicted = self._model(ids, pads).argmax(dim=-1)
                for row, frame in zip(predicted, chunk):
                    out.append(
                        [
                            self._trained.alphabet[int(row[pos])] if pos >= 0 else "O"
                            for pos in frame.first_positions
                        ]
                    )
        return out


class ModelRegistry:
    def __init__(self, model_dir: Path):
        self.model_dir = Path(model_dir)
        self.model_dir.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, TaggingRuntime] = {}
        self._lock = threading.Lock()

    def save(self, trained: TrainedModel) -> str:
        tag = f"m-{uuid.uuid4().hex[:12]}"
        path = self.model_dir / f"{tag}.pt"
        torch.save(
            {
                "state_dict": trained.model.state_dict(),
                "vocab_chars": trained.vocab.chars,
                "alphabet": trained.alphabet,
                "config": vars(trained.config),
                "chosen_epoch": trained.chosen_epoch,
            },
            path,
        )
        with self._lock:
            self._cache[tag] = TaggingRuntime(trained)
        return tag

    def load(self, tag: str) -> TaggingRuntime:
        with self._lock:
            if tag in self._cache:
                return self._cache[tag]
        path = self.model_dir / f"{tag}.pt"
        if not path.exists():
            raise UnknownModel(f"no model stored under tag {tag!r}")
        payload = torch.load(path, weights_only=False)
        config = TrainConfig(**payload["config"])
        vocab = Vocab(payload["vocab_chars"])
        alphabet = payload["alphabet"]
        model = build_model(
            config.encoder, len(vocab), config.max_len, len(alphabet), config.dropout
        )
        model.load_state_dict(payload["state_dict"])
        trained = TrainedModel(model, vocab, alphabet, config)
        runtime = TaggingRuntime(trained)
        with self._lock:
            self._cache[tag] = runtime
        return runtime
