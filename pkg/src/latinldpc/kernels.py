"""Kernel backend selection: compiled extension with pure-Python fallback.

Set LATINLDPC_KERNEL=py (or =c) to force a backend; the default prefers the
compiled latinldpc._fast extension and silently falls back when it is not
built.  Both backends implement the same four entry points with identical
semantics: girth_bipartite, enumerate_cycles, find_induced_pattern and
spa_decode_frames.
"""

from __future__ import annotations

import os

from . import _pyref

_forced = os.environ.get("LATINLDPC_KERNEL", "").strip().lower()

_impl = None
if _forced in ("", "c", "fast"):
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None
    if _impl is None and _forced in ("c", "fast"):
        raise ImportError(
            "LATINLDPC_KERNEL=c requested but latinldpc._fast is not built"
        )
if _impl is None:
    _impl = _pyref

BACKEND = _impl.BACKEND

girth_bipartite = _impl.girth_bipartite
enumerate_cycles = _impl.enumerate_cycles
find_induced_pattern = _impl.find_induced_pattern
spa_decode_frames = _impl.spa_decode_frames


def backend_name() -> str:
    return BACKEND
