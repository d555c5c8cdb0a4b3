# cython: language_level=3, boundscheck=False
"""Compiled token scan kernel; semantics identical to ``pure.scan_tokens``."""

from cpython.unicode cimport Py_UNICODE_ISSPACE


cdef inline bint _is_ascii_alnum(Py_UCS4 ch) nogil:
    return (u"0" <= ch <= u"9") or (u"a" <= ch <= u"z") or (u"A" <= ch <= u"Z")


def scan_tokens(str text):
    """Return half-open [start, end) spans of the tokens in *text*."""
    cdef Py_ssize_t i = 0, j
    cdef Py_ssize_t n = len(text)
    cdef Py_UCS4 ch
    spans = []
    while i < n:
        ch = text[i]
        if Py_UNICODE_ISSPACE(ch):
            i += 1
            continue
        if _is_ascii_alnum(ch):
            j = i + 1
            while j < n and _is_ascii_alnum(<Py_UCS4>text[j]):
                j += 1
            spans.append((i, j))
            i = j
        else:
            spans.append((i, i + 1))
            i += 1
    return spans
