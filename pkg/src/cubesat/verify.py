"""Saturation checks on subgraphs of Q_n.

A copy of Q_m is an m-dimensional subcube with all of its edges present.
For m = 2 this agrees with "subgraph isomorphic to Q_2", since every 4-cycle
of Q_n spans exactly two directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .cube import CubeGraph, EdgeId, SubcubePattern, _canonical_masks


class NotFreeError(ValueError):
    """Raised when an operation needs a Q_m-free graph and got one with a copy."""


@dataclass(frozen=True)
class SaturationVerdict:
    m: int
    copies: int
    is_free: bool
    is_semi_saturated: bool
    witness: SubcubePattern | EdgeId | None = None

    @property
    def is_saturated(self) -> bool:
        return self.is_free and self.is_semi_saturated

    def as_dict(self, n: int) -> dict:
        if isinstance(self.witness, SubcubePattern):
            witness = {"kind": "copy", "pattern": self.witness.to_string(n)}
        elif isinstance(self.witness, EdgeId):
            witness = {"kind": "uncovered_non_edge", "edge": [self.witness.base, self.witness.dir]}
        else:
            witness = None
        return {
            "m": self.m,
            "copies": self.copies,
            "is_free": self.is_free,
            "is_semi_saturated": self.is_semi_saturated,
            "is_saturated": self.is_saturated,
            "witness": witness,
        }


def count_copies(g: CubeGraph, m: int) -> int:
    if not 0 <= m <= g.n:
        raise ValueError(f"m must be in [0, {g.n}], got {m}")
    copies, _ = kernels.scan(g.array, m)
    return copies


def completion_counts(g: CubeGraph, m: int, dir_limit: int | None = None) -> np.ndarray:
    """``out[d-1, b]``: m-subcubes whose only missing edge is ``EdgeId(b, d)``.

    With ``dir_limit`` only subcubes along directions 1..dir_limit count.
    """
    _, cover = kernels.scan(g.array, m, dir_limit)
    return cover


def new_copies_through(g: CubeGraph, e: EdgeId, m: int) -> int:
    if g.has_edge(e):
        raise ValueError(f"{e} is already an edge")
    if e.dir > g.n or e.base >= g.num_vertices:
        raise ValueError(f"{e} is not an edge of Q_{g.n}")
    return kernels.new_copies(g.array, e.base, e.dir - 1, m)


def find_copy(g: CubeGraph, m: int) -> SubcubePattern | None:
    """First full m-subcube in (direction set, base) order, or None."""
    n = g.n
    arr = g.array
    idx = np.arange(1 << n, dtype=np.int64)
    for dirs in combinations(range(n), m):
        free = sum(1 << d for d in dirs)
        full = (idx & free) == 0
        for d in dirs:
            rest = free & ~(1 << d)
            o = rest
            while True:
                full &= arr[d, idx | o].astype(bool)
                if o == 0:
                    break
                o = (o - 1) & rest
        hits = np.flatnonzero(full)
        if hits.size:
            return SubcubePattern(free, int(hits[0]))
    return None


def _missing(g: CubeGraph) -> np.ndarray:
    return _canonical_masks(g.n) & (1 - g.array)


def verdict(g: CubeGraph, m: int) -> SaturationVerdict:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > g.n:
        # no m-subcubes: free, and semi-saturated only when nothing is missing
        missing = _missing(g)
        witness = None
        if missing.any():
            d, b = np.argwhere(missing.T)[0][::-1]
            witness = EdgeId(int(b), int(d) + 1)
        return SaturationVerdict(m, 0, True, witness is None, witness)
    copies, cover = kernels.scan(g.array, m)
    uncovered = _missing(g).astype(bool) & (cover == 0)
    witness: SubcubePattern | EdgeId | None = None
    if copies:
        witness = find_copy(g, m)
    elif uncovered.any():
        b, d = np.argwhere(uncovered.T)[0]
        witness = EdgeId(int(b), int(d) + 1)
    return SaturationVerdict(m, copies, copies == 0, not uncovered.any(), witness)


def uncovered_non_edges(g: CubeGraph, m: int) -> list[EdgeId]:
    """Non-edges whose addition creates no copy of Q_m, sorted by (base, dir)."""
    _, cover = kernels.scan(g.array, m)
    bases, dirs = np.nonzero((_missing(g).astype(bool) & (cover == 0)).T)
    return [EdgeId(int(b), int(d) + 1) for b, d in zip(bases, dirs)]


def edge_order(n: int, edges: Iterable[EdgeId] | None = None) -> list[EdgeId]:
    """Edges in ascending (base, dir) order; all of Q_n when none are given."""
    if edges is None:
        return CubeGraph.full(n).edges()
    return sorted(edges)


def greedy_extend(g: CubeGraph, m: int, S: Sequence[EdgeId], *, check: bool = True) -> CubeGraph:
    """Add the edges of S in order, skipping any that would complete a Q_m.

    The result is Q_m-free, contains g, and every edge of S left out would
    create a copy of Q_m if added.
    """
    if check and not is_free(g, m):
        raise NotFreeError(f"input graph contains a copy of Q_{m}")
    arr = g.to_array()
    if len(S):
        bases = np.fromiter((e.base for e in S), dtype=np.int64, count=len(S))
        dirs = np.fromiter((e.dir - 1 for e in S), dtype=np.int64, count=len(S))
        if dirs.max() >= g.n or bases.max() >= g.num_vertices:
            raise ValueError("S contains edges outside Q_n")
        kernels.greedy(arr, bases, dirs, m)
    return CubeGraph(g.n, arr, copy=False)


def greedy_extend_array(arr: np.ndarray, m: int, bases: np.ndarray, dirs: np.ndarray) -> int:
    """In-place variant for builders: 0-based ``dirs``; returns edges added."""
    return kernels.greedy(arr, bases, dirs, m)


def weak_closure(g: CubeGraph, m: int) -> CubeGraph:
    """Add completable non-edges until none is left.

    Completability only grows as edges are added, so adding every currently
    completable edge at once reaches the same fixpoint as any one-at-a-time
    order.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > g.n:
        return g
    arr = g.to_array()
    canon = _canonical_masks(g.n).astype(bool)
    while True:
        _, cover = kernels.scan(arr, m)
        grow = canon & (arr == 0) & (cover > 0)
        if not grow.any():
            break
        arr[grow] = 1
    return CubeGraph(g.n, arr, copy=False)


def weak_closure_sequential(g: CubeGraph, m: int, order: Sequence[EdgeId]) -> CubeGraph:
    """One-edge-at-a-time closure, sweeping ``order`` until a sweep adds nothing."""
    arr = g.to_array()
    changed = True
    while changed:
        changed = False
        for e in order:
            d = e.dir - 1
            if not arr[d, e.base] and kernels.new_copies(arr, e.base, d, m) > 0:
                arr[d, e.base] = 1
                changed = True
    return CubeGraph(g.n, arr, copy=False)


def is_weakly_saturated(g: CubeGraph, m: int) -> bool:
    return weak_closure(g, m).num_edges == g.n << (g.n - 1)


def is_free(g: CubeGraph, m: int) -> bool:
    return m > g.n or count_copies(g, m) == 0


def check_mode(g: CubeGraph, m: int, mode: str) -> bool:
    if mode == "sat":
        return verdict(g, m).is_saturated
    if mode == "ssat":
        return verdict(g, m).is_semi_saturated
    if mode == "wsat":
        return is_weakly_saturated(g, m)
    raise ValueError(f"unknown mode {mode!r}")


# -- exact minimum by search ----------------------------------------------------


@dataclass(frozen=True)
class ExactResult:
    n: int
    m: int
    mode: str
    value: int
    witness_graph: CubeGraph
    subsets_checked: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "value": self.value,
            "subsets_checked": self.subsets_checked,
        }


class _BitModel:
    """Q_n with edges as bit positions, for fast subset tests."""

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.edges = CubeGraph.full(n).edges()
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.E = len(self.edges)
        self.subcubes: list[int] = []
        if m <= n:
            from .cube import enumerate_subcubes, subcube_edges

            for p in enumerate_subcubes(n, m):
                mask = 0
                for e in subcube_edges(p):
                    mask |= 1 << self.index[e]
                self.subcubes.append(mask)
        # subcubes through each edge, as masks of the other edges
        self.through: list[list[int]] = [[] for _ in range(self.E)]
        for s in self.subcubes:
            for i in range(self.E):
                if (s >> i) & 1:
                    self.through[i].append(s & ~(1 << i))

    def graph(self, mask: int) -> CubeGraph:
        return CubeGraph.from_edges(self.n, [e for i, e in enumerate(self.edges) if (mask >> i) & 1])

    def is_free(self, mask: int) -> bool:
        return all(s & mask != s for s in self.subcubes)

    def completable(self, mask: int, i: int) -> bool:
        return any(rest & mask == rest for rest in self.through[i])

    def is_semi(self, mask: int) -> bool:
        for i in range(self.E):
            if not (mask >> i) & 1 and not self.completable(mask, i):
                return False
        return True

    def closure(self, mask: int) -> int:
        changed = True
        while changed:
            changed = False
            for i in range(self.E):
                if not (mask >> i) & 1 and self.completable(mask, i):
                    mask |= 1 << i
                    changed = True
        return mask

    def passes(self, mask: int, mode: str) -> bool:
        if mode == "sat":
            return self.is_free(mask) and self.is_semi(mask)
        if mode == "ssat":
            return self.is_semi(mask)
        return self.closure(mask) == (1 << self.E) - 1


def _masks_by_popcount(E: int):
    for k in range(E + 1):
        for combo in combinations(range(E), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield k, mask


def exact_min(n: int, m: int, mode: str, *, allow_search: bool = True) -> ExactResult:
    """Least edge count of a subgraph of Q_n passing ``mode`` (sat, ssat or wsat).

    n <= 3 sweeps every edge subset in order of size. n = 4 (sat and ssat
    only) uses a depth-first branch and bound and can take minutes.
    """
    if mode not in ("sat", "ssat", "wsat"):
        raise ValueError(f"unknown mode {mode!r}")
    if m < 1:
        raise ValueError("m must be >= 1")
    if n <= 3:
        model = _BitModel(n, m)
        checked = 0
        for k, mask in _masks_by_popcount(model.E):
            checked += 1
            if model.passes(mask, mode):
                return ExactResult(n, m, mode, k, model.graph(mask), checked)
        raise AssertionError("the full cube always passes")  # pragma: no cover
    if n == 4 and mode in ("sat", "ssat") and allow_search:
        return _branch_and_bound(n, m, mode)
    raise ValueError(f"exact search not supported for n={n}, mode={mode}")


def _branch_and_bound(n: int, m: int, mode: str) -> ExactResult:
    model = _BitModel(n, m)
    E = model.E
    full = (1 << E) - 1
    best_mask = full
    best = E
    nodes = 0
    need_free = mode == "sat"
    # subcubes containing each edge, as full masks, for the freeness test
    containing = [[rest | (1 << i) for rest in model.through[i]] for i in range(E)]

    # earlier edges sharing a subcube with edge i
    linked = [
        [j for j in range(i) if any((rest >> i) & 1 for rest in model.through[j])]
        for i in range(E)
    ]

    def alive(i: int, excluded: int) -> bool:
        return any(rest & excluded == 0 for rest in model.through[i])

    def dfs(i: int, included: int, excluded: int, size: int) -> None:
        nonlocal best, best_mask, nodes
        nodes += 1
        if size >= best:
            return
        if i == E:
            best, best_mask = size, included
            return
        bit = 1 << i
        # exclude edge i: it and every earlier excluded edge must stay completable
        ex = excluded | bit
        if alive(i, ex) and all(alive(j, ex) for j in linked[i] if (ex >> j) & 1):
            dfs(i + 1, included, ex, size)
        inc = included | bit
        if not need_free or all(s & inc != s for s in containing[i]):
            dfs(i + 1, inc, excluded, size + 1)

    dfs(0, 0, 0, 0)
    return ExactResult(n, m, mode, best, model.graph(best_mask), nodes)
