"""Canonical character-level tokenization with exact source offsets.

This tokenizer is the single alignment authority of the toolkit: every
label sequence, every decoded span, and every model-side subword piece is
projected back onto these tokens. CJK characters are one token each,
maximal ASCII letter/digit runs are one token, every other non-whitespace
character stands alone. Offsets are code-point offsets into the paragraph,
so ``paragraph[tok.start:tok.end] == tok.text`` always holds.

The scan itself runs in the compiled kernel when available (see
``docelem._kernels``).
"""

from dataclasses import dataclass

from docelem import _kernels


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int


def tokenize(paragraph: str) -> list[Token]:
    """Tokenize one paragraph, preserving exact source offsets."""
    return [Token(paragraph[s:e], s, e) for s, e in _kernels.scan_tokens(paragraph)]
