"""Pure-Python subcube kernels.

Same signatures and results as the compiled ``_ckernels`` module. ``scan``
is vectorised over subcube bases with numpy; ``new_copies`` and ``greedy``
are plain loops and are the slow path when the extension is missing.
"""

from __future__ import annotations

import numpy as np


def _submasks(mask: int) -> list[int]:
    out = []
    o = mask
    while True:
        out.append(o)
        if o == 0:
            return out
        o = (o - 1) & mask


def _bases(n: int, free: int) -> np.ndarray:
    """All vertices with every bit of ``free`` cleared, ascending."""
    fixed = [i for i in range(n) if not (free >> i) & 1]
    bases = np.zeros(1, dtype=np.int64)
    for i in fixed:
        bases = np.concatenate([bases, bases | (1 << i)])
    bases.sort()
    return bases


def scan(edges: np.ndarray, combos: np.ndarray) -> tuple[int, np.ndarray]:
    n, N = edges.shape
    m = combos.shape[1]
    cover = np.zeros((n, N), dtype=np.int32)
    total = m << (m - 1) if m > 0 else 0
    copies = 0
    for row in combos:
        free = 0
        for d in row:
            free |= 1 << int(d)
        bases = _bases(n, free)
        slots = []
        for d in row:
            d = int(d)
            for o in _submasks(free & ~(1 << d)):
                slots.append((d, bases | o))
        present = np.zeros(len(bases), dtype=np.int32)
        for d, idx in slots:
            present += edges[d, idx]
        copies += int(np.count_nonzero(present == total))
        if total == 0:
            continue
        one_short = present == total - 1
        if not one_short.any():
            continue
        for d, idx in slots:
            hit = one_short & (edges[d, idx] == 0)
            cover[d, idx[hit]] += 1
    return copies, cover


def new_copies(edges: np.ndarray, base: int, d: int, combos: np.ndarray) -> int:
    count = 0
    for row in combos:
        free = 1 << d
        for c in row:
            free |= 1 << int(c)
        v = base & ~free
        ok = True
        for dd in [int(c) for c in row] + [d]:
            for o in _submasks(free & ~(1 << dd)):
                if dd == d and (v | o) == base:
                    continue
                if not edges[dd, v | o]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def greedy(edges: np.ndarray, bases, dirs, combos_by_dir) -> int:
    added = 0
    for b, d in zip(bases, dirs):
        b = int(b)
        d = int(d)
        if edges[d, b]:
            continue
        if new_copies(edges, b, d, combos_by_dir[d]) == 0:
            edges[d, b] = 1
            added += 1
    return added
