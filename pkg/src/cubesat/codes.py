"""Hamming and approximate Hamming codes as subsets of V(Q_n).

A code is the kernel of an r x n parity-check matrix over GF(2). Column
``i`` (1-based) is stored as an r-bit integer whose bit ``j`` is row ``j``.
Membership goes through the syndrome, so nothing of size 2^n is stored
unless a caller asks for a mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cube import check_dimension, vertex_weight

MAX_ENUMERATE = 20


def gf2_rank(columns) -> int:
    """Rank over GF(2) of the matrix whose columns are the given bit-words."""
    basis: dict[int, int] = {}
    for c in columns:
        x = int(c)
        while x:
            top = x.bit_length() - 1
            if top not in basis:
                basis[top] = x
                break
            x ^= basis[top]
    return len(basis)


@dataclass(frozen=True)
class ParityCheckMatrix:
    r: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if any(c <= 0 or c >> self.r for c in self.columns):
            raise ValueError("columns must be non-zero r-bit words")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("columns must be distinct")
        if gf2_rank(self.columns) != self.r:
            raise ValueError(f"matrix does not have full rank {self.r}")

    @property
    def n(self) -> int:
        return len(self.columns)

    def rows(self) -> list[list[int]]:
        return [[(c >> j) & 1 for c in self.columns] for j in range(self.r)]


@dataclass(frozen=True)
class LinearCode:
    matrix: ParityCheckMatrix

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def r(self) -> int:
        return self.matrix.r

    @property
    def size(self) -> int:
        return 1 << (self.n - self.r)

    def syndrome(self, v: int) -> int:
        s = 0
        cols = self.matrix.columns
        i = 0
        while v:
            if v & 1:
                s ^= cols[i]
            v >>= 1
            i += 1
        return s

    def __contains__(self, v: int) -> bool:
        return self.syndrome(v) == 0

    @cached_property
    def syndromes(self) -> np.ndarray:
        """Syndrome of every vertex of Q_n, indexed by vertex."""
        check_dimension(self.n)
        s = np.zeros(1, dtype=np.int64)
        for c in self.matrix.columns:
            s = np.concatenate([s, s ^ c])
        s.setflags(write=False)
        return s

    def mask(self, shift: int = 0) -> np.ndarray:
        """Boolean membership array of the coset ``code + shift``."""
        return self.syndromes == self.syndrome(shift)

    def codewords(self) -> np.ndarray:
        if self.n > MAX_ENUMERATE:
            raise ValueError(f"refusing to enumerate codewords for n > {MAX_ENUMERATE}")
        return np.flatnonzero(self.syndromes == 0)

    def coset(self, shift: int) -> "Coset":
        return Coset(self, shift)


@dataclass(frozen=True)
class Coset:
    code: LinearCode
    shift: int

    def __contains__(self, x: int) -> bool:
        return (x ^ self.shift) in self.code

    def mask(self) -> np.ndarray:
        return self.code.mask(self.shift)


def _binary_columns(n: int) -> LinearCode:
    # columns 1..n in binary; the powers of two up to 2^(r-1) give full rank
    r = n.bit_length()
    return LinearCode(ParityCheckMatrix(r, tuple(range(1, n + 1))))


def hamming_code(r: int) -> LinearCode:
    """The Hamming code of length 2^r - 1.

    Column ``i`` is ``i`` in binary, so the first three columns are
    (1,0,..,0), (0,1,0,..,0) and (1,1,0,..,0).
    """
    if r < 2:
        raise ValueError(f"Hamming codes need r >= 2, got {r}")
    return _binary_columns((1 << r) - 1)


def approximate_hamming_code(n: int) -> LinearCode:
    """Length-n code with r = ceil(log2(n + 1)) and columns 1..n in binary."""
    if n < 3:
        raise ValueError(f"approximate Hamming codes need n >= 3, got {n}")
    return _binary_columns(n)


def syndrome(code: LinearCode, v: int) -> int:
    if v >> code.n:
        raise ValueError(f"vertex {v} has more than {code.n} coordinates")
    return code.syndrome(v)


@dataclass(frozen=True)
class CodeCertificate:
    n: int
    r: int
    size: int
    size_ok: bool
    min_distance: int | None
    min_dist_3: bool
    dominating: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "size": self.size,
            "size_ok": self.size_ok,
            "min_distance": self.min_distance,
            "min_dist_3": self.min_dist_3,
            "dominating": self.dominating,
        }


def certify(code: LinearCode) -> CodeCertificate:
    """Check size, minimum distance and domination by sweeping all of Q_n."""
    n = code.n
    member = code.syndromes == 0
    size = int(np.count_nonzero(member))
    words = np.flatnonzero(member)
    # the code is linear, so the minimum distance is the least non-zero weight
    nonzero = words[words != 0]
    if nonzero.size:
        weights = np.zeros(nonzero.shape, dtype=np.int64)
        for i in range(n):
            weights += (nonzero >> i) & 1
        min_distance = int(weights.min())
    else:
        min_distance = None
    dominated = member.copy()
    idx = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        dominated |= member[idx ^ (1 << i)]
    return CodeCertificate(
        n=n,
        r=code.r,
        size=size,
        size_ok=size == (1 << (n - code.r)),
        min_distance=min_distance,
        min_dist_3=min_distance is None or min_distance >= 3,
        dominating=bool(dominated.all()),
    )


def is_perfect(code: LinearCode) -> bool:
    """Every vertex within distance 1 of exactly one codeword."""
    member = code.syndromes == 0
    idx = np.arange(1 << code.n, dtype=np.int64)
    hits = member.astype(np.int64)
    for i in range(code.n):
        hits += member[idx ^ (1 << i)]
    return bool(np.all(hits == 1))


def min_distance_bruteforce(words) -> int | None:
    """Pairwise minimum distance, for cross-checking small codes."""
    words = [int(w) for w in words]
    best = None
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            d = vertex_weight(x ^ y)
            best = d if best is None else min(best, d)
    return best
