"""Fixed-length input framing and loss masking.

An item's tokens are split into characters and framed as

    [CLS] c1 c2 ... ck [SEP] [PAD] ...

padded to ``max_len``. Each canonical token is supervised, and read out
at inference, only at its first character; every other position (later
characters, the frame markers, padding) is masked. A token whose first
character falls past the ``max_len - 2`` window gets no position at all
and always answers O.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence

import torch
import torch.nn.functional as F

from .errors import LabelAlphabetMismatch, MalformedItem
from .vocab import CLS, PAD, SEP, Vocab


def label_alphabet(element_ids: Sequence[str]) -> list[str]:
    out = ["O"]
    for element_id in element_ids:
        out.append(f"B-{element_id}")
        out.append(f"I-{element_id}")
    return out


@dataclass
class Frame:
    input_ids: torch.Tensor  # [max_len] long
    pad_mask: torch.Tensor  # [max_len] bool, True at padding
    first_positions: list[int]  # one per token; -1 when past the window
    label_ids: torch.Tensor | None = None  # [max_len] long, 0 off supervision
    supervised: torch.Tensor | None = None  # [max_len] bool


def frame_item(
    vocab: Vocab,
    tokens: Sequence[str],
    max_len: int,
    alphabet_index: Mapping[str, int] | None = None,
    labels: Sequence[str] | None = None,
) -> Frame:
    if not tokens or any(not tok for tok in tokens):
        raise MalformedItem("item has an empty token list or an empty token")
    if labels is not None and len(labels) != len(tokens):
        raise MalformedItem(f"{len(labels)} labels for {len(tokens)} tokens")

    window = max_len - 2  # room for the frame markers
    ids = [CLS]
    first_positions: list[int] = []
    used = 0
    for tok in tokens:
        first_positions.append(1 + used if used < window else -1)
        for ch in tok:
            if used == window:
                break
            ids.append(vocab.id_of(ch))
            used += 1
    ids.append(SEP)
    ids.extend([PAD] * (max_len - len(ids)))

    input_ids = torch.tensor(ids, dtype=torch.long)
    pad_mask = input_ids == PAD

    label_ids = supervised = None
    if labels is not None:
        assert alphabet_index is not None
        label_ids = torch.zeros(max_len, dtype=torch.long)
        supervised = torch.zeros(max_len, dtype=torch.bool)
        for pos, label in zip(first_positions, labels):
            if label not in alphabet_index:
                raise LabelAlphabetMismatch(f"label {label!r} outside the alphabet")
            if pos >= 0:
                label_ids[pos] = alphabet_index[label]
                supervised[pos] = True
    return Frame(input_ids, pad_mask, first_positions, label_ids, supervised)


def masked_loss(
    logits: torch.Tensor, label_ids: torch.Tensor, supervised: torch.Tensor
) -> torch.Tensor:
    """Cross-entropy over supervised positions only.

    Positions are gathered before the loss is computed, so label values
    at masked or padded positions cannot influence the result at all.
    """
    flat = supervised.reshape(-1)
    picked = logits.reshape(-1, logits.shape[-1])[flat]
    return F.cross_entropy(picked, label_ids.reshape(-1)[flat])
