"""Kernel backend selection: compiled extension if available, else pure Python.

NVMIO_LAB_BACKEND forces the choice: "cython" (error if the extension
is missing), "python", or "auto" (default).
"""

from __future__ import annotations

import os

from . import _pykernels

_ck = None
try:
    from nvmio_lab import _ckernels as _ck  # type: ignore[no-redef]
except ImportError:
    _ck = None

_choice = os.environ.get("NVMIO_LAB_BACKEND", "auto").strip().lower() or "auto"
if _choice in ("auto", ""):
    _mod = _ck if _ck is not None else _pykernels
elif _choice in ("cython", "c"):
    if _ck is None:
        raise ImportError(
            "NVMIO_LAB_BACKEND=cython but the compiled nvmio_lab._ckernels "
            "extension is not available; rebuild or unset the variable"
        )
    _mod = _ck
elif _choice in ("python", "py"):
    _mod = _pykernels
else:
    raise ValueError(f"NVMIO_LAB_BACKEND={_choice!r}: expected auto, cython, or python")


def backend_name() -> str:
    return "cython" if _mod is not _pykernels else "python"


collective_timeline = _mod.collective_timeline
page_cache_run = _mod.page_cache_run
