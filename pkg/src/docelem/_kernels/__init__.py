"""Token scan kernel selection.

Imports the compiled Cython kernel when the extension was built, and falls
back to the pure-Python implementation otherwise. Set ``DOCELEM_PURE=1`` to
force the fallback (used by the benchmark and the differential tests).
"""

import os

from . import pure

if os.environ.get("DOCELEM_PURE") == "1":
    scan_tokens = pure.scan_tokens
    KERNEL = "pure"
else:
    try:
        from ._scan import scan_tokens  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        scan_tokens = pure.scan_tokens
        KERNEL = "pure"

__all__ = ["scan_tokens", "KERNEL", "pure"]
