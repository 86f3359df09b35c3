"""The hypercube Q_n and its spanning subgraphs.

Vertices are integers: bit ``i - 1`` holds coordinate ``i``. An edge is
named by its lower endpoint (the one with a 0 in the edge's direction) and a
1-based direction. A :class:`CubeGraph` keeps one byte per (direction,
vertex) slot; slot ``[d - 1, b]`` is set when the edge at base ``b`` in
direction ``d`` is present.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

DEFAULT_N_MAX = 24


def n_max() -> int:
    """Largest supported dimension (``CUBESAT_NMAX`` overrides the default 24)."""
    raw = os.environ.get("CUBESAT_NMAX")
    return int(raw) if raw else DEFAULT_N_MAX


def check_dimension(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= n_max():
        raise ValueError(f"dimension must be in [1, {n_max()}], got {n!r}")
    return int(n)


def vertex_weight(v: int) -> int:
    return int(v).bit_count()


@dataclass(frozen=True, order=True, slots=True)
class EdgeId:
    base: int
    dir: int

    def __post_init__(self):
        if self.dir < 1:
            raise ValueError(f"direction must be >= 1, got {self.dir}")
        if self.base < 0 or (self.base >> (self.dir - 1)) & 1:
            raise ValueError(f"edge base {self.base} is not canonical for direction {self.dir}")

    @classmethod
    def between(cls, x: int, y: int) -> "EdgeId":
        """The edge joining adjacent vertices ``x`` and ``y``."""
        diff = x ^ y
        if diff == 0 or diff & (diff - 1):
            raise ValueError(f"{x} and {y} are not adjacent")
        return cls(min(x, y), diff.bit_length())


def edge_endpoints(e: EdgeId) -> tuple[int, int]:
    return e.base, e.base ^ (1 << (e.dir - 1))


@dataclass(frozen=True, order=True, slots=True)
class SubcubePattern:
    """A word in {0,1,*}^n: stars at ``free_mask``, fixed values in ``values``."""

    free_mask: int
    values: int

    def __post_init__(self):
        if self.values & self.free_mask:
            raise ValueError("fixed values overlap the free coordinates")

    @property
    def dim(self) -> int:
        return self.free_mask.bit_count()

    @property
    def directions(self) -> tuple[int, ...]:
        """Free coordinates, 1-based and ascending."""
        return tuple(i + 1 for i in range(self.free_mask.bit_length()) if (self.free_mask >> i) & 1)

    def contains(self, v: int) -> bool:
        return (v & ~self.free_mask) == self.values

    def vertices(self) -> list[int]:
        out = []
        o = self.free_mask
        while True:
            out.append(self.values | o)
            if o == 0:
                break
            o = (o - 1) & self.free_mask
        return sorted(out)

    def to_string(self, n: int) -> str:
        """Render as coordinates 1..n left to right, e.g. ``"*10"``."""
        chars = []
        for i in range(n):
            if (self.free_mask >> i) & 1:
                chars.append("*")
            else:
                chars.append(str((self.values >> i) & 1))
        return "".join(chars)

    @classmethod
    def from_string(cls, word: str) -> "SubcubePattern":
        free = values = 0
        for i, ch in enumerate(word):
            if ch == "*":
                free |= 1 << i
            elif ch == "1":
                values |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad pattern character {ch!r}")
        return cls(free, values)

    @classmethod
    def of_edge(cls, e: EdgeId) -> "SubcubePattern":
        return cls(1 << (e.dir - 1), e.base)


def enumerate_subcubes(n: int, m: int) -> Iterator[SubcubePattern]:
    """Yield every m-dimensional subcube of Q_n once: C(n, m) * 2^(n-m) patterns."""
    if not 0 <= m <= n:
        raise ValueError(f"subcube dimension {m} not in [0, {n}]")
    full = (1 << n) - 1
    for dirs in combinations(range(n), m):
        free = 0
        for d in dirs:
            free |= 1 << d
        fixed = full & ~free
        # walk the submasks of the fixed coordinates in ascending order
        v = 0
        while True:
            yield SubcubePattern(free, v)
            if v == fixed:
                break
            v = ((v | free) + 1) & fixed


def subcube_count(n: int, m: int) -> int:
    return comb(n, m) * 2 ** (n - m)


def subcube_edges(p: SubcubePattern) -> list[EdgeId]:
    """The m * 2^(m-1) edges of a subcube, sorted by (base, dir)."""
    out = []
    for d in p.directions:
        rest = p.free_mask & ~(1 << (d - 1))
        o = rest
        while True:
            out.append(EdgeId(p.values | o, d))
            if o == 0:
                break
            o = (o - 1) & rest
    out.sort()
    return out


def _canonical_masks(n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.int64)
    return np.stack([((v >> d) & 1) == 0 for d in range(n)]).astype(np.uint8)


class CubeGraph:
    """An immutable spanning subgraph of Q_n."""

    __slots__ = ("n", "_arr")

    def __init__(self, n: int, array: np.ndarray | None = None, *, copy: bool = True):
        n = check_dimension(n)
        N = 1 << n
        if array is None:
            arr = np.zeros((n, N), dtype=np.uint8)
        else:
            if copy:
                arr = np.array(array, dtype=np.uint8, order="C")
            else:
                arr = np.ascontiguousarray(array, dtype=np.uint8)
            if arr.shape != (n, N):
                raise ValueError(f"edge array must have shape {(n, N)}, got {arr.shape}")
            arr[arr != 0] = 1
            if np.any(arr & (1 - _canonical_masks(n))):
                raise ValueError("edge array has bits set at non-canonical bases")
        arr.setflags(write=False)
        self.n = n
        self._arr = arr

    @classmethod
    def empty(cls, n: int) -> "CubeGraph":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "CubeGraph":
        return cls(n, _canonical_masks(check_dimension(n)), copy=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[EdgeId | tuple[int, int]]) -> "CubeGraph":
        n = check_dimension(n)
        arr = np.zeros((n, 1 << n), dtype=np.uint8)
        for e in edges:
            e = e if isinstance(e, EdgeId) else EdgeId(*e)
            if e.dir > n or e.base >= 1 << n:
                raise ValueError(f"{e} is not an edge of Q_{n}")
            arr[e.dir - 1, e.base] = 1
        return cls(n, arr, copy=False)

    @property
    def array(self) -> np.ndarray:
        """Read-only (n, 2^n) uint8 view of the edge slots."""
        return self._arr

    def to_array(self) -> np.ndarray:
        """A writable copy of the edge slots, for builders."""
        return self._arr.copy()

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self._arr))

    @property
    def density(self) -> float:
        return self.num_edges / (self.n << (self.n - 1))

    def has_edge(self, e: EdgeId) -> bool:
        return e.dir <= self.n and e.base < (1 << self.n) and bool(self._arr[e.dir - 1, e.base])

    def __contains__(self, e: EdgeId) -> bool:
        return self.has_edge(e)

    def edges(self) -> list[EdgeId]:
        """Present edges sorted by (base, dir)."""
        bases, dirs = np.nonzero(self._arr.T)
        return [EdgeId(int(b), int(d) + 1) for b, d in zip(bases, dirs)]

    def non_edges(self) -> list[EdgeId]:
        canon = _canonical_masks(self.n)
        bases, dirs = np.nonzero((canon & (1 - self._arr)).T)
        return [EdgeId(int(b), int(d) + 1) for b, d in zip(bases, dirs)]

    def degrees(self) -> np.ndarray:
        deg = np.zeros(1 << self.n, dtype=np.int64)
        idx = np.arange(1 << self.n, dtype=np.int64)
        for d in range(self.n):
            row = self._arr[d]
            deg += row
            deg += row[idx ^ (1 << d)]
        return deg

    def neighbours(self, v: int) -> list[int]:
        out = []
        for d in range(self.n):
            u = v ^ (1 << d)
            if self._arr[d, min(u, v)]:
                out.append(u)
        return out

    def with_edges(self, edges: Iterable[EdgeId]) -> "CubeGraph":
        arr = self.to_array()
        for e in edges:
            arr[e.dir - 1, e.base] = 1
        return CubeGraph(self.n, arr, copy=False)

    def without_edges(self, edges: Iterable[EdgeId]) -> "CubeGraph":
        arr = self.to_array()
        for e in edges:
            arr[e.dir - 1, e.base] = 0
        return CubeGraph(self.n, arr, copy=False)

    def union(self, other: "CubeGraph") -> "CubeGraph":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return CubeGraph(self.n, self._arr | other._arr, copy=False)

    def issubgraph(self, other: "CubeGraph") -> bool:
        return other.n == self.n and not np.any(self._arr & (1 - other._arr))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._arr, other._arr)

    def __hash__(self) -> int:
        return hash((self.n, self._arr.tobytes()))

    def __repr__(self) -> str:
        return f"CubeGraph(n={self.n}, edges={self.num_edges})"


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class CubeAutomorphism:
    """x -> permute(x) XOR shift, where coordinate i moves to ``perm[i - 1]``.

    ``perm`` is a permutation of 1..n.
    """

    perm: tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{n}")
        if not 0 <= self.shift < (1 << n):
            raise ValueError("shift out of range")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "CubeAutomorphism":
        return cls(tuple(range(1, n + 1)), 0)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "CubeAutomorphism":
        perm = tuple(int(p) + 1 for p in rng.permutation(n))
        return cls(perm, int(rng.integers(0, 1 << n)))

    def vertex_map(self) -> np.ndarray:
        v = np.arange(1 << self.n, dtype=np.int64)
        out = np.zeros_like(v)
        for i, p in enumerate(self.perm):
            out |= ((v >> i) & 1) << (p - 1)
        return out ^ self.shift

    def __call__(self, v: int) -> int:
        out = 0
        for i, p in enumerate(self.perm):
            out |= ((v >> i) & 1) << (p - 1)
        return out ^ self.shift

    def map_edge(self, e: EdgeId) -> EdgeId:
        x, y = edge_endpoints(e)
        return EdgeId.between(self(x), self(y))


def apply_automorphism(g: CubeGraph, a: CubeAutomorphism) -> CubeGraph:
    if a.n != g.n:
        raise ValueError(f"automorphism of Q_{a.n} applied to a graph on Q_{g.n}")
    vmap = a.vertex_map()
    arr = np.zeros_like(g.array)
    for d in range(g.n):
        bases = np.flatnonzero(g.array[d])
        if bases.size == 0:
            continue
        target = a.perm[d] - 1
        arr[target, vmap[bases] & ~(1 << target)] = 1
    return CubeGraph(g.n, arr, copy=False)


# -- product view --------------------------------------------------------------


@dataclass(frozen=True)
class PartitionedVertex:
    """A vertex written as (v_1 | ... | v_t) with part lengths ``lengths``."""

    parts: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.lengths):
            raise ValueError("one length per part")
        for p, k in zip(self.parts, self.lengths):
            if not 0 <= p < (1 << k):
                raise ValueError(f"part {p} does not fit in {k} bits")

    @property
    def n(self) -> int:
        return sum(self.lengths)

    @classmethod
    def split(cls, v: int, lengths: Iterable[int]) -> "PartitionedVertex":
        lengths = tuple(lengths)
        parts = []
        shift = 0
        for k in lengths:
            parts.append((v >> shift) & ((1 << k) - 1))
            shift += k
        if v >> shift:
            raise ValueError(f"vertex {v} has more than {shift} coordinates")
        return cls(tuple(parts), lengths)

    def join(self) -> int:
        v = 0
        shift = 0
        for p, k in zip(self.parts, self.lengths):
            v |= p << shift
            shift += k
        return v


def place_inner(arr: np.ndarray, n: int, u: int, inner: np.ndarray) -> None:
    """Copy an (n, 2^n) inner edge array into principal cube ``u`` of ``arr``."""
    lo = u << n
    arr[:n, lo:lo + (1 << n)] = inner


def add_external(arr: np.ndarray, n: int, outer: EdgeId, inner_vertices: np.ndarray | None = None) -> None:
    """Add external edges along outer edge ``outer`` (all of them if no vertices given)."""
    lo = outer.base << n
    row = n + outer.dir - 1
    if inner_vertices is None:
        arr[row, lo:lo + (1 << n)] = 1
    else:
        arr[row, lo + np.asarray(inner_vertices, dtype=np.int64)] = 1


def compose_product(
    n: int,
    k: int,
    inner: Mapping[int, CubeGraph | None],
    external: Iterable[tuple[EdgeId, int]] = (),
) -> CubeGraph:
    """Build a graph on Q_n □ Q_k = Q_{n+k}.

    ``inner[u]`` is placed in the principal Q_n at outer vertex ``u``; its
    vertex ``x`` becomes ``x | (u << n)``. Each ``(outer_edge, x)`` pair adds
    the external edge joining the copies of ``x`` across ``outer_edge``.
    Internal directions are 1..n, external ones n+1..n+k.
    """
    total = check_dimension(n + k)
    arr = np.zeros((total, 1 << total), dtype=np.uint8)
    for u, g in inner.items():
        if g is None:
            continue
        if g.n != n:
            raise ValueError(f"inner graph at {u} lives on Q_{g.n}, expected Q_{n}")
        if not 0 <= u < (1 << k):
            raise ValueError(f"outer vertex {u} not in Q_{k}")
        place_inner(arr, n, u, g.array)
    for outer, x in external:
        if outer.dir > k or outer.base >= (1 << k):
            raise ValueError(f"{outer} is not an edge of Q_{k}")
        if not 0 <= x < (1 << n):
            raise ValueError(f"inner vertex {x} not in Q_{n}")
        add_external(arr, n, outer, np.array([x]))
    return CubeGraph(total, arr, copy=False)


def principal_cube(g: CubeGraph, n: int, u: int) -> CubeGraph:
    """Project the internal edges of principal Q_n number ``u`` back to Q_n."""
    if not 1 <= n <= g.n:
        raise ValueError("inner dimension out of range")
    lo = u << n
    return CubeGraph(n, g.array[:n, lo:lo + (1 << n)])


# -- file format ----------------------------------------------------------------


def graph_to_dict(g: CubeGraph) -> dict:
    return {
        "n": g.n,
        "edges": [[e.base, e.dir] for e in g.edges()],
    }


def graph_from_dict(data: Mapping) -> CubeGraph:
    n = int(data["n"])
    edges = [EdgeId(int(b), int(d)) for b, d in data["edges"]]
    return CubeGraph.from_edges(n, edges)


def save_graph(g: CubeGraph, path: str | os.PathLike) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g)) + "\n")


def load_graph(path: str | os.PathLike) -> CubeGraph:
    return graph_from_dict(json.loads(Path(path).read_text()))
