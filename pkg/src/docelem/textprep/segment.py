"""Paragraph segmentation.

Documents are processed at the paragraph level throughout the toolkit;
a paragraph is a newline-delimited line with surrounding whitespace
excluded from its range. Lines that are empty after trimming are dropped.
"""


def segment(text: str) -> list[tuple[int, int]]:
    """Return sorted half-open [start, end) paragraph ranges over *text*."""
    ranges: list[tuple[int, int]] = []
    pos = 0
    n = len(text)
    while pos <= n:
        nl = text.find("\n", pos)
        line_end = n if nl < 0 else nl
        start, end = pos, line_end
        while start < end and text[start].isspace():
            start += 1
        while end > start and text[end - 1].isspace():
            end -= 1
        if start < end:
            ranges.append((start, end))
        if nl < 0:
            break
        pos = nl + 1
    return ranges
