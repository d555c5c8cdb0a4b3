"""Training loop with best-dev checkpoint selection.

Items arrive in the wire shape ({doc_id, paragraph_index, tokens,
labels}); the loop is a plain seeded Adam run over fixed-length frames.
The dev set steers nothing but checkpoint choice, so an empty dev set
simply degrades to final-epoch selection.
"""

import copy
from dataclasses import dataclass, field
from typing import Sequence

import torch

from .errors import EmptyTrainingSet, MalformedItem
from .framing import Frame, frame_item, label_alphabet, masked_loss
from .model import TokenTagger, build_model
from .vocab import Vocab

_CONFIG_KEYS = {
    "learning_rate",
    "epochs",
    "max_len",
    "encoder",
    "batch_size",
    "seed",
    "select",
    "dropout",
    "unk_dropout",
}


@dataclass
class TrainConfig:
    learning_rate: float = 1e-4
    epochs: int = 8
    max_len: int = 256
    encoder: str = "tiny"
    batch_size: int = 1
    seed: int = 0
    select: str = "best-dev"  # or "final"
    dropout: float = 0.0
    # chance of swapping a character for UNK while training, so inference
    # stays stable on characters the training set never contained
    unk_dropout: float = 0.02

    @classmethod
    def from_wire(cls, config: dict) -> "TrainConfig":
        unknown = set(config) - _CONFIG_KEYS
        if unknown:
            raise MalformedItem(f"unknown config keys {sorted(unknown)}")
        out = cls(**config)
        if out.max_len < 3:
            raise MalformedItem("max_len leaves no room for content")
        if out.epochs < 1 or out.batch_size < 1:
            raise MalformedItem("epochs and batch_size must be positive")
        if out.select not in ("best-dev", "final"):
            raise MalformedItem(f"unknown checkpoint selection {out.select!r}")
        return out


@dataclass
class TrainedModel:
    model: TokenTagger
    vocab: Vocab
    alphabet: list[str]
    config: TrainConfig
    history: dict = field(default_factory=dict)
    chosen_epoch: int = 0


def _stack(frames: Sequence[Frame]) -> tuple[torch.Tensor, ...]:
    return (
        torch.stack([f.input_ids for f in frames]),
        torch.stack([f.pad_mask for f in frames]),
        torch.stack([f.label_ids for f in frames]),
        torch.stack([f.supervised for f in frames]),
    )


def _drop_to_unk(
    input_ids: torch.Tensor, rate: float, generator: torch.Generator
) -> torch.Tensor:
    from .vocab import UNK, _N_SPECIALS

    roll = torch.rand(input_ids.shape, generator=generator)
    hit = (roll < rate) & (input_ids >= _N_SPECIALS)
    return input_ids.masked_fill(hit, UNK)


def _epoch_loss(model, tensors, batch_size: int = 64) -> float:
    ids, pads, labels, sup = tensors
    model.eval()
    total, weight = 0.0, 0
    with torch.no_grad():
        for i in range(0, len(ids), batch_size):
            s = slice(i, i + batch_size)
            n = int(sup[s].sum())
            if n == 0:
                continue
            total += float(masked_loss(model(ids[s], pads[s]), labels[s], sup[s])) * n
            weight += n
    return total / weight if weight else 0.0


def train_model(
    schema_elements: Sequence[str],
    train_items: Sequence[dict],
    dev_items: Sequence[dict],
    config: TrainConfig,
) -> TrainedModel:
    if not train_items:
        raise EmptyTrainingSet("no training items")
    alphabet = label_alphabet(schema_elements)
    index = {label: i for i, label in enumerate(alphabet)}
    vocab = Vocab.from_items(list(train_items) + list(dev_items))

    def frames_of(items):
        return [
            frame_item(vocab, it["tokens"], config.max_len, index, it["labels"])
            for it in items
        ]

    train = _stack(frames_of(train_items))
    dev = _stack(frames_of(dev_items)) if dev_items else None

    torch.manual_seed(config.seed)
    model = build_model(
        config.encoder, len(vocab), config.max_len, len(alphabet), config.dropout
    )
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    generator = torch.Generator().manual_seed(config.seed)

    ids, pads, labels, sup = train
    history = {"train_loss": [], "dev_loss": []}
    best_state, best_dev, chosen = None, float("inf"), config.epochs
    for epoch in range(1, config.epochs + 1):
        model.train()
        order = torch.randperm(len(ids), generator=generator)
        running, seen = 0.0, 0
        for i in range(0, len(order), config.batch_size):
            batch = order[i : i + config.batch_size]
            if not bool(sup[batch].any()):
                continue  # an all-O paragraph past the window has nothing to learn from
            batch_ids = ids[batch]
            if config.unk_dropout > 0:
                batch_ids = _drop_to_unk(batch_ids, config.unk_dropout, generator)
            loss = masked_loss(model(batch_ids, pads[batch]), labels[batch], sup[batch])
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            running += float(loss.detach()) * len(batch)
            seen += len(batch)
        history["train_loss"].append(running / seen if seen else 0.0)

        if dev is not None:
            dev_loss = _epoch_loss(model, dev)
            history["dev_loss"].append(dev_loss)
            if config.select == "best-dev" and dev_loss < best_dev:
                best_dev = dev_loss
                best_state = copy.deepcopy(model.state_dict())
                chosen = epoch

    if config.select == "best-dev" and best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return TrainedModel(model, vocab, alphabet, config, history, chosen)
