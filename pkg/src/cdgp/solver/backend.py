"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CDGP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pysearch

try:
    if os.environ.get("CDGP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel requested")
    from . import _bpb
except ImportError:
    _bpb = None

AVAILABLE = {"python": _pysearch.search}
if _bpb is not None:
    AVAILABLE["compiled"] = _bpb.search

DEFAULT = "compiled" if _bpb is not None else "python"


def get_search(name=None):
    name = name or DEFAULT
    try:
        return AVAILABLE[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(AVAILABLE)}") from None
