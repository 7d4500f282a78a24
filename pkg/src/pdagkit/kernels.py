"""Kernel dispatch: the compiled extension when importable, Python otherwise.

Set ``PDAGKIT_PURE_PYTHON=1`` before import to force the fallback. Graphs
wider than 64 nodes always take the Python path since the compiled kernels
work on machine words.
"""

from __future__ import annotations

import os
from typing import Sequence

from pdagkit import _kernels_py as py

try:
    if os.environ.get("PDAGKIT_PURE_PYTHON"):
        raise ImportError("pure-python kernels requested")
    from pdagkit import _ckernels as _c
except ImportError:
    _c = None

BACKEND = "cython" if _c is not None else "python"

_WORD = 64


def _native(masks: Sequence[int]) -> bool:
    return _c is not None and len(masks) <= _WORD


def closure(succ: Sequence[int], seeds: int) -> int:
    if _native(succ):
        return _c.closure(succ, seeds)
    return py.closure(succ, seeds)


def dconnected(parents: Sequence[int], children: Sequence[int], x: int, y: int, z: int) -> bool:
    if _native(parents):
        return _c.dconnected(parents, children, x, y, z)
    return py.dconnected(parents, children, x, y, z)


def ptrail_connected(
    children: Sequence[int],
    parents: Sequence[int],
    undirected: Sequence[int],
    x: int,
    y: int,
    z: int,
    collider_ok: int,
) -> bool:
    if _native(children):
        return _c.ptrail_connected(children, parents, undirected, x, y, z, collider_ok)
    return py.ptrail_connected(children, parents, undirected, x, y, z, collider_ok)
