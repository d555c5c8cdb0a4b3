"""Encoder and classifier head.

The tiny encoder is a two-layer character transformer trained from
scratch; it exists so the whole train/serve loop runs in minutes on a
CPU. Other encoder names are rejected rather than silently substituted.
"""

import torch
from torch import nn

from .errors import UnknownEncoder
from .vocab import PAD


class TinyEncoder(nn.Module):
    def __init__(
        self,
        vocab_size: int,
        max_len: int,
        hidden: int = 128,
        heads: int = 4,
        layers: int = 2,
        dropout: float = 0.1,
    ):
        super().__init__()
        self.hidden = hidden
        self.char_embedding = nn.Embedding(vocab_size, hidden, padding_idx=PAD)
        self.position_embedding = nn.Embedding(max_len, hidden)
        layer = nn.TransformerEncoderLayer(
            d_model=hidden,
            nhead=heads,
            dim_feedforward=4 * hidden,
            dropout=dropout,
            batch_first=True,
        )
        # nested-tensor packing makes outputs depend on batch composition
        self.encoder = nn.TransformerEncoder(
            layer, num_layers=layers, enable_nested_tensor=False
        )
        self.norm = nn.LayerNorm(hidden)

    def forward(self, input_ids: torch.Tensor, pad_mask: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(input_ids.shape[1], device=input_ids.device)
        x = self.char_embedding(input_ids) + self.position_embedding(positions)
        x = self.encoder(self.norm(x), src_key_padding_mask=pad_mask)
        return x


class ClassifierHead(nn.Module):
    """Per-position linear projection onto the label alphabet."""

    def __init__(self, hidden: int, n_labels: int):
        super().__init__()
        self.linear = nn.Linear(hidden, n_labels)

    def forward(self, states: torch.Tensor) -> torch.Tensor:
        return self.linear(states)

    def probabilities(self, states: torch.Tensor) -> torch.Tensor:
        return torch.softmax(self.linear(states), dim=-1)


class TokenTagger(nn.Module):
    def __init__(self, encoder: TinyEncoder, head: ClassifierHead):
        super().__init__()
        self.encoder = encoder
        self.head = head

    def forward(self, input_ids: torch.Tensor, pad_mask: torch.Tensor) -> torch.Tensor:
        return self.head(self.encoder(input_ids, pad_mask))


ENCODERS = ("tiny",)


def build_model(
    encoder: str, vocab_size: int, max_len: int, n_labels: int, dropout: float = 0.1
) -> TokenTagger:
    if encoder != "tiny":
        raise UnknownEncoder(
            f"encoder {encoder!r} is not available; this package ships {ENCODERS}"
        )
    enc = TinyEncoder(vocab_size, max_len, dropout=dropout)
    return TokenTagger(enc, ClassifierHead(enc.hidden, n_labels))
