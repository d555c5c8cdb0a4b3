"""Character vocabulary for the encoder.

The wire carries canonical tokens; the model splits each into its
characters (the subword pieces) and looks them up here. Characters not
seen during training map to UNK at inference time.
"""

import json
from pathlib import Path
from typing import Iterable

PAD, UNK, CLS, SEP = 0, 1, 2, 3
_N_SPECIALS = 4


class Vocab:
    def __init__(self, chars: Iterable[str]):
        self._chars = list(chars)
        self._index = {c: i + _N_SPECIALS for i, c in enumerate(self._chars)}

    def __len__(self) -> int:
        return _N_SPECIALS + len(self._chars)

    def id_of(self, char: str) -> int:
        return self._index.get(char, UNK)

    @property
    def chars(self) -> list[str]:
        return list(self._chars)

    @classmethod
    def from_items(cls, items: Iterable[dict]) -> "Vocab":
        chars = sorted({ch for item in items for tok in item["tokens"] for ch in tok})
        return cls(chars)

    def save(self, path: Path) -> None:
        path.write_text(json.dumps(self._chars, ensure_ascii=False), encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "Vocab":
        return cls(json.loads(path.read_text(encoding="utf-8")))
