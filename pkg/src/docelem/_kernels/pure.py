"""Pure-Python token scan kernel.

Reference implementation of the scan also provided by the compiled
``_scan`` extension; both must produce identical output for any input
(covered by a differential test).
"""


def _is_ascii_alnum(ch: str) -> bool:
    return "0" <= ch <= "9" or "a" <= ch <= "z" or "A" <= ch <= "Z"


def scan_tokens(text: str) -> list[tuple[int, int]]:
    """Return half-open [start, end) spans of the tokens in *text*.

    Maximal runs of ASCII letters/digits form one token; every other
    non-whitespace character (CJK ideographs, punctuation, full-width
    forms) is a single-character token. Whitespace separates tokens and
    never appears inside one.
    """
    spans: list[tuple[int, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if _is_ascii_alnum(ch):
            j = i + 1
            while j < n and _is_ascii_alnum(text[j]):
                j += 1
            spans.append((i, j))
            i = j
        else:
            spans.append((i, i + 1))
            i += 1
    return spans
