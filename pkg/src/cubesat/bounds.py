"""Density recurrences and finite-instance lower-bound certificates.

Bound arithmetic is exact (``fractions.Fraction``). The only inexact input
is a power n^(-a) with an irrational value; it is rounded up to a rational
from 256-bit arithmetic, which keeps every value a valid upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .cube import CubeGraph, EdgeId, _canonical_masks


def exponent(m: int) -> Fraction:
    """The density exponent a_m: a_1 = 1 and a_m = 1 / (7 * 3^(m-2))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return Fraction(1)
    return Fraction(1, 7 * 3 ** (m - 2))


def _iroot(x: int, q: int) -> int | None:
    """Exact integer q-th root of x, or None."""
    lo, hi = 0, 1
    while hi**q <= x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**q < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**q == x else None


def neg_power(n: int, a: Fraction) -> Fraction:
    """n^(-a) as a Fraction; exact when rational, else rounded up."""
    a = Fraction(a)
    if n <= 0:
        raise ZeroDivisionError("n must be positive")
    root = _iroot(n, a.denominator)
    if root is not None:
        return Fraction(1, root**a.numerator) if a >= 0 else Fraction(root ** (-a.numerator))
    with mpmath.workprec(256):
        value = mpmath.power(n, -mpmath.mpf(a.numerator) / a.denominator)
        man, exp = value.man_exp
    approx = Fraction(int(man)) * Fraction(2) ** int(exp)
    # pad by a relative 2^-200 so the result stays an upper bound
    return approx + approx / 2**200


def claim1_bound(
    rho: Fraction | int,
    k: int,
    n: int,
    n0: int,
    m: int,
    c_prev: Fraction | int = 0,
    a_prev: Fraction | int = 1,
) -> Fraction:
    """Upper bound on the density of the k+1 graphs produced from graphs of density ``rho``.

    (1 - 1/(2k)) rho + k/n + (1/k) (c_prev n^(-a_prev) + (n^(m-1) - (n0-m)^(m-1)) / n^(m-1))
    """
    if n == 0:
        raise ZeroDivisionError("n must be positive")
    rho = Fraction(rho)
    c_prev = Fraction(c_prev)
    lower = Fraction(n ** (m - 1) - (n0 - m) ** (m - 1), n ** (m - 1))
    correction = c_prev * neg_power(n, Fraction(a_prev)) if c_prev else Fraction(0)
    return (1 - Fraction(1, 2 * k)) * rho + Fraction(k, n) + Fraction(1, k) * (correction + lower)


@dataclass
class DensitySchedule:
    m: int
    n0: int
    t: int
    c_prev: Fraction
    a_prev: Fraction
    a_m: Fraction
    k: list[int] = field(default_factory=list)
    n: list[int] = field(default_factory=list)
    rho: list[Fraction] = field(default_factory=list)
    recommended_t: float = 0.0

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n0": self.n0,
            "t": self.t,
            "c_prev": str(self.c_prev),
            "a_prev": str(self.a_prev),
            "a_m": str(self.a_m),
            "recommended_t": self.recommended_t,
            "steps": [
                {"i": i, "k": self.k[i], "n": self.n[i], "rho": str(self.rho[i]), "rho_float": float(self.rho[i])}
                for i in range(self.t + 1)
            ],
        }

    def rows(self) -> list[tuple]:
        return [(i, self.k[i], self.n[i], str(self.rho[i]), float(self.rho[i])) for i in range(self.t + 1)]


def schedule(m: int, n0: int, t: int, c_prev: Fraction | int = 0) -> DensitySchedule:
    """Iterate the increment bound t times from rho_0 = 1 on Q_{n0}.

    k_0 = m + 1, k_{i+1} = k_i + 1, n_{i+1} = n_i + k_i.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if m < 2:
        raise ValueError("the increment needs m >= 2")
    a_prev = exponent(m - 1)
    sched = DensitySchedule(m, n0, t, Fraction(c_prev), a_prev, exponent(m))
    k, n, rho = m + 1, n0, Fraction(1)
    sched.k.append(k)
    sched.n.append(n)
    sched.rho.append(rho)
    for _ in range(t):
        rho = claim1_bound(rho, k, n, n0, m, c_prev, a_prev)
        n, k = n + k, k + 1
        sched.k.append(k)
        sched.n.append(n)
        sched.rho.append(rho)
    power = Fraction(2, 7) if m == 2 else 2 * a_prev / 3
    sched.recommended_t = float(n0) ** float(power)
    return sched


# -- lower bounds -----------------------------------------------------------------


def good_pairs(g: CubeGraph) -> dict[EdgeId, int]:
    """For each non-edge, how many vertices sit inside a length-3 path joining its ends.

    Such a path from x to y = x + e_d must be x, x+e_s, y+e_s, y for some
    s != d, so each completed square through the non-edge contributes its two
    far vertices.
    """
    n = g.n
    canon = _canonical_masks(n).astype(bool)
    missing = canon & (g.array == 0)
    if n < 2:
        return {EdgeId(int(b), int(d) + 1): 0 for b, d in zip(*np.nonzero(missing.T))}
    _, cover = kernels.scan(g.array, 2)
    bases, dirs = np.nonzero(missing.T)
    return {EdgeId(int(b), int(d) + 1): 2 * int(cover[d, b]) for b, d in zip(bases, dirs)}


def good_pairs_bruteforce(g: CubeGraph) -> dict[EdgeId, int]:
    """Path enumeration oracle for :func:`good_pairs`."""
    out = {}
    for e in g.non_edges():
        x, y = e.base, e.base ^ (1 << (e.dir - 1))
        inner = set()
        for a in g.neighbours(x):
            if a == y:
                continue
            for b in g.neighbours(a):
                if b in (x, y):
                    continue
                if y in g.neighbours(b):
                    inner.update((a, b))
        out[e] = len(inner)
    return out


def is_connected(g: CubeGraph) -> bool:
    N = g.num_vertices
    rows, cols = [], []
    for d in range(g.n):
        bases = np.flatnonzero(g.array[d])
        rows.append(bases)
        cols.append(bases ^ (1 << d))
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(N, N))
    count, _ = connected_components(adj, directed=False)
    return count == 1


def degree_extremal_bound(n: int, m: int) -> Fraction:
    """Least e(G) compatible with sum C(d(v), 2) >= 2(e(Q_n) - e(G)) when
    degrees lie in [m-1, n]: the degree sum is split between the two extremes."""
    N = 2**n
    lo = m - 1
    if n == lo:
        return Fraction(n * N, 2)
    # x vertices of degree n, the rest of degree lo, with x(n - lo) = 2e - lo N
    # x C(n,2) + (N - x) C(lo,2) >= n N - 2e, linear in e
    span = Fraction(comb(n, 2) - comb(lo, 2), n - lo)
    # span (2e - lo N) + N C(lo,2) >= n N - 2e
    return (n * N - N * comb(lo, 2) + span * lo * N) / (2 * span + 2)


@dataclass
class BoundReport:
    n: int
    m: int
    edges: int
    density: float
    connected: bool
    spanning_tree_bound: int
    spanning_tree_ok: bool
    min_degree: int
    min_degree_ok: bool
    degree_pair_sum: int
    good_pair_rhs: int
    good_pair_ok: bool
    min_good_pairs: int | None
    degree_extremal_bound: Fraction

    @property
    def all_ok(self) -> bool:
        return self.spanning_tree_ok and self.min_degree_ok and self.good_pair_ok

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "edges": self.edges,
            "density": self.density,
            "checks": {
                "spanning_tree": {
                    "ok": self.spanning_tree_ok,
                    "connected": self.connected,
                    "bound": self.spanning_tree_bound,
                    "margin": self.edges - self.spanning_tree_bound,
                },
                "min_degree": {
                    "ok": self.min_degree_ok,
                    "value": self.min_degree,
                    "bound": self.m - 1,
                    "margin": self.min_degree - (self.m - 1),
                },
                "good_pairs": {
                    "ok": self.good_pair_ok,
                    "lhs": self.degree_pair_sum,
                    "rhs": self.good_pair_rhs,
                    "margin": self.degree_pair_sum - self.good_pair_rhs,
                    "min_good_pairs_per_non_edge": self.min_good_pairs,
                },
            },
            "degree_extremal_bound": float(self.degree_extremal_bound),
            "all_ok": self.all_ok,
        }


def lower_bound_certificate(g: CubeGraph, m: int) -> BoundReport:
    """Evaluate the spanning-tree, minimum-degree and good-pair inequalities on g."""
    n = g.n
    e = g.num_edges
    deg = g.degrees()
    connected = is_connected(g)
    lhs = int(np.sum(deg * (deg - 1) // 2))
    rhs = 2 * ((n << (n - 1)) - e)
    pairs = good_pairs(g)
    return BoundReport(
        n=n,
        m=m,
        edges=e,
        density=g.density,
        connected=connected,
        spanning_tree_bound=2**n - 1,
        spanning_tree_ok=connected and e >= 2**n - 1,
        min_degree=int(deg.min()),
        min_degree_ok=int(deg.min()) >= m - 1,
        degree_pair_sum=lhs,
        good_pair_rhs=rhs,
        good_pair_ok=lhs >= rhs,
        min_good_pairs=min(pairs.values()) if pairs else None,
        degree_extremal_bound=degree_extremal_bound(n, m),
    )


def semi_saturation_bound(n: int, m: int) -> Fraction:
    """(m^2 + m/2) 2^n."""
    return (Fraction(m * m) + Fraction(m, 2)) * 2**n


def semi_saturation_bound_exact_split(n: int, m: int) -> Fraction:
    """(m^2/2 + m/2) 2^n, for n = m(2^t - 1)."""
    return Fraction(m * m + m, 2) * 2**n


def q2_saturation_bound(n: int) -> int:
    return 10 * 2**n


def q2_saturation_bound_exact_split(n: int) -> int:
    """6 * 2^n, for n = 2(2^t - 1)."""
    return 6 * 2**n
