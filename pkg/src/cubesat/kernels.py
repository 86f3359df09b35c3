"""Backend selection for the hot subcube loops.

The compiled extension ``cubesat._ckernels`` is used when it imports;
otherwise the numpy fallback in ``cubesat._pykernels`` is used. Setting
``CUBESAT_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _pykernels

_backend = _pykernels
BACKEND = "python"

if os.environ.get("CUBESAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on build
        pass
    else:
        _backend = _ckernels
        BACKEND = "cython"


def available(name: str) -> bool:
    if name == "python":
        return True
    try:
        from . import _ckernels  # type: ignore[attr-defined]  # noqa: F401
    except ImportError:
        return False
    return name == "cython"


def use_backend(name: str):
    """Switch backend at runtime (``"cython"`` or ``"python"``); returns the previous name."""
    global _backend, BACKEND
    previous = BACKEND
    if name == "python":
        _backend, BACKEND = _pykernels, "python"
    elif name == "cython":
        from . import _ckernels  # type: ignore[attr-defined]

        _backend, BACKEND = _ckernels, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


@lru_cache(maxsize=None)
def direction_sets(limit: int, m: int) -> np.ndarray:
    """All m-subsets of ``range(limit)`` as a (count, m) int64 array."""
    rows = list(combinations(range(limit), m))
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), m)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def companion_sets(n: int, d: int, k: int) -> np.ndarray:
    """All k-subsets of ``range(n)`` that avoid direction ``d``."""
    rows = list(combinations([i for i in range(n) if i != d], k))
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), k)
    arr.setflags(write=False)
    return arr


def scan(edges: np.ndarray, m: int, dir_limit: int | None = None) -> tuple[int, np.ndarray]:
    """Return ``(copies, cover)`` for m-subcubes along directions ``< dir_limit``.

    ``copies`` is the number of such subcubes with every edge present.
    ``cover[d, b]`` is the number of them whose single missing edge is the
    edge at base ``b`` in 0-based direction ``d``.
    """
    n = edges.shape[0]
    limit = n if dir_limit is None else min(dir_limit, n)
    if m > limit:
        return 0, np.zeros(edges.shape, dtype=np.int32)
    return _backend.scan(np.ascontiguousarray(edges), direction_sets(limit, m))


def new_copies(edges: np.ndarray, base: int, d: int, m: int) -> int:
    """Number of m-subcubes through edge ``(base, d)`` with all other edges present."""
    n = edges.shape[0]
    if m < 1 or m > n:
        return 0
    return int(_backend.new_copies(np.ascontiguousarray(edges), int(base), int(d),
                                   companion_sets(n, d, m - 1)))


def greedy(edges: np.ndarray, bases: np.ndarray, dirs: np.ndarray, m: int) -> int:
    """In-place greedy completion; ``edges`` must be C-contiguous and writable."""
    n = edges.shape[0]
    if m > n:
        # no subcube can ever be completed, so every listed edge is accepted
        before = int(edges.sum())
        edges[dirs, bases] = 1
        return int(edges.sum()) - before
    combos = [companion_sets(n, d, m - 1) for d in range(n)]
    return int(_backend.greedy(edges, np.ascontiguousarray(bases, dtype=np.int64),
                               np.ascontiguousarray(dirs, dtype=np.int64), combos))
