"""Explicit saturated, semi-saturated and weakly saturated subgraphs of Q_n."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .codes import LinearCode, _binary_columns, approximate_hamming_code, hamming_code
from .cube import (
    CubeAutomorphism,
    CubeGraph,
    EdgeId,
    SubcubePattern,
    _canonical_masks,
    add_external,
    apply_automorphism,
    check_dimension,
    place_inner,
)
from .rng import stream
from .verify import count_copies, greedy_extend_array, verdict

log = logging.getLogger(__name__)


def _popcounts(n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.int64)
    w = np.zeros_like(v)
    for i in range(n):
        w += (v >> i) & 1
    return w


def _ordered(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(bases, 0-based dirs) of the set slots, ascending by (base, dir)."""
    bases, dirs = np.nonzero(mask.T)
    return bases.astype(np.int64), dirs.astype(np.int64)


def _edges_meeting(canon: np.ndarray, vertex_set: np.ndarray) -> np.ndarray:
    n = canon.shape[0]
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(canon)
    for d in range(n):
        out[d] = canon[d] & (vertex_set | vertex_set[idx ^ (1 << d)])
    return out


# -- covered families and the base family ------------------------------------


@dataclass
class CoveredFamily:
    """Q_m-saturated graphs A_1..A_k on Q_n that jointly contain every
    Q_{m-1} lying along directions 1..n0."""

    n: int
    m: int
    n0: int
    graphs: list[CubeGraph]
    notes: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.graphs)

    def densities(self) -> list[float]:
        return [g.density for g in self.graphs]

    def sparsest(self) -> CubeGraph:
        return min(self.graphs, key=lambda g: g.num_edges)


def full_subcube_mask(arr: np.ndarray, dirs) -> np.ndarray:
    """Boolean array over vertices: True at bases of full subcubes along ``dirs`` (0-based)."""
    n = arr.shape[0]
    idx = np.arange(1 << n, dtype=np.int64)
    free = 0
    for d in dirs:
        free |= 1 << d
    full = (idx & free) == 0
    for d in dirs:
        rest = free & ~(1 << d)
        o = rest
        while True:
            full &= arr[d, idx | o].astype(bool)
            if o == 0:
                break
            o = (o - 1) & rest
    return full


def uncovered_prefix_subcubes(graphs: list[CubeGraph], j: int, n0: int, limit: int = 10) -> list[SubcubePattern]:
    """j-subcubes along directions 1..n0 contained in none of ``graphs`` (first ``limit``)."""
    from itertools import combinations

    n = graphs[0].n
    out = []
    for dirs in combinations(range(min(n0, n)), j):
        free = sum(1 << d for d in dirs)
        idx = np.arange(1 << n, dtype=np.int64)
        want = (idx & free) == 0
        have = np.zeros(1 << n, dtype=bool)
        for g in graphs:
            have |= full_subcube_mask(g.array, dirs)
        for b in np.flatnonzero(want & ~have)[: limit - len(out)]:
            out.append(SubcubePattern(free, int(b)))
        if len(out) >= limit:
            break
    return out


def family_covers(fam: CoveredFamily) -> bool:
    return not uncovered_prefix_subcubes(fam.graphs, fam.m - 1, fam.n0, limit=1)


def base_family_initial(n0: int, m: int, i: int) -> CubeGraph:
    """A_i before greedy completion: edges whose lower endpoint has weight
    in {i, ..., i+m-2} mod m+1."""
    canon = _canonical_masks(n0)
    residues = np.array([(i + j) % (m + 1) for j in range(m - 1)])
    keep = np.isin(_popcounts(n0) % (m + 1), residues)
    return CubeGraph(n0, canon & keep.astype(np.uint8), copy=False)


def base_family(n0: int, m: int) -> CoveredFamily:
    """m+1 Q_m-saturated graphs on Q_{n0} covering every Q_{m-1}."""
    if m < 2:
        raise ValueError("base family needs m >= 2")
    if n0 < m:
        raise ValueError(f"need n0 >= m, got n0={n0}, m={m}")
    check_dimension(n0)
    bases, dirs = _ordered(_canonical_masks(n0))
    graphs = []
    for i in range(1, m + 2):
        arr = base_family_initial(n0, m, i).to_array()
        greedy_extend_array(arr, m, bases, dirs)
        graphs.append(CubeGraph(n0, arr, copy=False))
    return CoveredFamily(n0, m, n0, graphs)


# -- colourings of Q_k ----------------------------------------------------------


@dataclass(frozen=True)
class CubeColouring:
    k: int
    shift_index: int
    colour: np.ndarray

    def __getitem__(self, x: int) -> int:
        return int(self.colour[x])

    def zero_class(self) -> np.ndarray:
        return np.flatnonzero(self.colour == 0)


def _colouring_code(k: int) -> LinearCode:
    return approximate_hamming_code(k) if k >= 3 else _binary_columns(k)


def increment_colourings(k: int, shift_index: int, fill: str = "cover") -> CubeColouring:
    """Colour Q_k with 0..k from the code shifted by e_{shift_index}.

    Codewords of the shifted code get colour 0 and their neighbours along
    direction j get colour j. Vertices the code does not dominate are free;
    ``fill="cover"`` hands them the colours they miss in the other shifts,
    so that across shifts 0..k every vertex gets every non-zero colour.
    ``fill="rotate"`` uses ((x + shift_index) mod k) + 1 throughout.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if not 0 <= shift_index <= k:
        raise ValueError(f"shift_index must be in [0, {k}]")
    code = _colouring_code(k)
    cols = code.matrix.columns
    col_index = {c: i + 1 for i, c in enumerate(cols)}
    shift_syn = [0] + list(cols)
    syn = code.syndromes
    colour = np.empty(1 << k, dtype=np.int64)
    for x in range(1 << k):
        s = int(syn[x])
        t = s ^ shift_syn[shift_index]
        if t == 0:
            colour[x] = 0
        elif t in col_index:
            colour[x] = col_index[t]
        elif fill == "rotate":
            colour[x] = (x + shift_index) % k + 1
        elif fill == "cover":
            undominated = [j for j in range(k + 1) if (s ^ shift_syn[j]) != 0 and (s ^ shift_syn[j]) not in col_index]
            obtained = {col_index[s ^ shift_syn[j]] for j in range(k + 1) if (s ^ shift_syn[j]) in col_index}
            missing = [c for c in range(1, k + 1) if c not in obtained]
            pos = undominated.index(shift_index)
            colour[x] = missing[pos] if pos < len(missing) else (x + shift_index) % k + 1
        else:
            raise ValueError(f"unknown fill rule {fill!r}")
    colour.setflags(write=False)
    return CubeColouring(k, shift_index, colour)


# -- the density increment -----------------------------------------------------------


def bad_edge_mask(g: CubeGraph, m: int, n0: int) -> np.ndarray:
    """Absent edges of a Q_{m-1}-saturated ``g`` none of whose completed
    Q_{m-1}'s lie along directions 1..n0."""
    canon = _canonical_masks(g.n).astype(bool)
    absent = canon & (g.array == 0)
    _, cover = kernels.scan(g.array, m - 1, n0)
    return absent & (cover == 0)


def best_automorphism(g: CubeGraph, m: int, n0: int, trials: int, rng: np.random.Generator):
    """Best of ``trials`` uniform random automorphisms by bad-edge count
    (identity included as the first candidate)."""
    best_a = CubeAutomorphism.identity(g.n)
    best_g = g
    best_bad = int(bad_edge_mask(g, m, n0).sum())
    for _ in range(trials):
        if best_bad == 0:
            break
        a = CubeAutomorphism.random(g.n, rng)
        image = apply_automorphism(g, a)
        bad = int(bad_edge_mask(image, m, n0).sum())
        if bad < best_bad:
            best_a, best_g, best_bad = a, image, bad
    return best_a, best_g, best_bad


def increment_step(
    fam: CoveredFamily,
    G_lower: CubeGraph,
    trials: int = 200,
    seed: int = 0,
    *,
    check: bool = True,
    fill: str = "cover",
    keep_initial: bool = False,
) -> CoveredFamily:
    """Build k+1 Q_m-saturated graphs on Q_{n+k} from a covered family of k graphs."""
    n, k, m, n0 = fam.n, fam.k, fam.m, fam.n0
    if G_lower.n != n:
        raise ValueError(f"G_lower lives on Q_{G_lower.n}, expected Q_{n}")
    if check:
        if not family_covers(fam):
            raise ValueError("family does not cover every prefix Q_{m-1}")
        if not verdict(G_lower, m - 1).is_saturated:
            raise ValueError(f"G_lower is not Q_{m - 1}-saturated")
    total = check_dimension(n + k)
    rng = stream(seed, "increment", n, k)
    auto, placed, bad_count = best_automorphism(G_lower, m, n0, trials, rng)
    bad = bad_edge_mask(placed, m, n0)

    canon_total = _canonical_masks(total)
    external = np.zeros_like(canon_total)
    external[n:] = canon_total[n:]
    ext_bases, ext_dirs = _ordered(external)

    graphs = []
    initial = []
    for j in range(k + 1):
        colouring = increment_colourings(k, j, fill)
        arr = np.zeros((total, 1 << total), dtype=np.uint8)
        zero_cubes = colouring.zero_class()
        for u in range(1 << k):
            c = colouring[u]
            place_inner(arr, n, u, placed.array if c == 0 else fam.graphs[c - 1].array)
        for u in zero_cubes:
            for i in range(k):
                add_external(arr, n, EdgeId.between(int(u), int(u) ^ (1 << i)))
        if keep_initial:
            initial.append(CubeGraph(total, arr))
        bad_total = np.zeros_like(arr, dtype=bool)
        for u in zero_cubes:
            lo = int(u) << n
            bad_total[:n, lo:lo + (1 << n)] = bad
        bad_bases, bad_dirs = _ordered(bad_total)
        greedy_extend_array(
            arr,
            m,
            np.concatenate([ext_bases, bad_bases]),
            np.concatenate([ext_dirs, bad_dirs]),
        )
        graphs.append(CubeGraph(total, arr, copy=False))
    notes = {
        "automorphism": {"perm": list(auto.perm), "shift": auto.shift},
        "bad_edges_per_zero_cube": bad_count,
        "trials": trials,
    }
    if keep_initial:
        notes["initial"] = initial
    log.debug("increment Q_%d -> Q_%d: %d bad edges per zero cube", n, total, bad_count)
    return CoveredFamily(total, m, n0, graphs, notes)


def lower_saturated(n: int, m: int, seed: int = 0) -> CubeGraph:
    """A sparse Q_m-saturated graph on Q_n, used inside colour-0 cubes."""
    if m == 1:
        return CubeGraph.empty(n)
    candidates = [base_family(n, m).sparsest()]
    if m == 2 and n >= 6:
        candidates.append(q2_saturated(n))
    return min(candidates, key=lambda g: g.num_edges)


def iterate_family(m: int, n0: int, t: int, seed: int = 0, trials: int = 200) -> CoveredFamily:
    fam = base_family(n0, m)
    for step in range(t):
        G_lower = lower_saturated(fam.n, m - 1, seed)
        fam = increment_step(fam, G_lower, trials, seed + step, check=False)
    return fam


def iterate_construction(m: int, n0: int, t: int, seed: int = 0, trials: int = 200) -> CubeGraph:
    """Sparsest Q_m-saturated graph after t increments from the base family on Q_{n0}.

    The final dimension is n0 + sum_{i<t} (m + 1 + i).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return CubeGraph.empty(n0)
    return iterate_family(m, n0, t, seed, trials).sparsest()


def final_dimension(m: int, n0: int, t: int) -> int:
    return n0 + sum(m + 1 + i for i in range(t))


# -- bounded average degree constructions ------------------------------------------------


def split_length(n: int, m: int) -> tuple[int, int, int]:
    """Write n = m(2^t - 1) + r with 0 <= r < m 2^t; returns (t, n0, r)."""
    if n < m or m < 1:
        raise ValueError(f"need n >= m >= 1, got n={n}, m={m}")
    t = 1
    while m * ((1 << (t + 1)) - 1) <= n:
        t += 1
    n0 = (1 << t) - 1
    return t, n0, n - m * n0


def semi_saturated_core(n: int, m: int) -> np.ndarray:
    """Boolean vertex mask of A: some part v_i (i <= m) lies in the Hamming code."""
    t, n0, _ = split_length(n, m)
    in_code = _binary_columns(n0).syndromes == 0
    idx = np.arange(1 << n, dtype=np.int64)
    mask = (1 << n0) - 1
    A = np.zeros(1 << n, dtype=bool)
    for i in range(m):
        A |= in_code[(idx >> (i * n0)) & mask]
    return A


def semi_saturated(n: int, m: int) -> CubeGraph:
    """All edges meeting A; Q_m-semi-saturated with fewer than (m^2 + m/2) 2^n edges."""
    if m < 1:
        raise ValueError("m must be >= 1")
    check_dimension(n)
    A = semi_saturated_core(n, m)
    return CubeGraph(n, _edges_meeting(_canonical_masks(n), A), copy=False)


@dataclass
class ClaimGraph:
    n0: int
    H: CubeGraph
    code: LinearCode
    C: np.ndarray
    D: np.ndarray

    def certify(self) -> dict:
        H = self.H.array
        n0 = self.n0
        idx = np.arange(1 << n0, dtype=np.int64)
        C, D = self.C, self.D
        nbr_in = {}
        edge_inside = {}
        for name, S in (("C", C), ("D", D)):
            count = np.zeros(1 << n0, dtype=np.int64)
            inside = False
            for d in range(n0):
                other = idx ^ (1 << d)
                present = H[d, np.minimum(idx, other)].astype(bool)
                count += present & S[other]
                inside |= bool(np.any(present & S & S[other]))
            nbr_in[name] = count
            edge_inside[name] = inside
        meets = True
        for d in range(n0):
            bases = np.flatnonzero(H[d])
            ends = (C | D)
            meets &= bool(np.all(ends[bases] | ends[bases ^ (1 << d)]))
        outside = ~(C | D)
        cd = 2**n0 // (n0 + 1)
        e_H = self.H.num_edges
        out = {
            "q2_free": count_copies(self.H, 2) == 0,
            "disjoint": not bool(np.any(C & D)),
            "C_independent": not edge_inside["C"],
            "D_independent": not edge_inside["D"],
            "C_dominating": bool(np.all(C | (nbr_in["C"] > 0))),
            "D_dominating": bool(np.all(D | (nbr_in["D"] > 0))),
            "edges_meet_CD": meets,
            "edge_bound": e_H <= 2 ** (n0 + 1),
            "C_size": int(C.sum()) == cd,
            "D_size": int(D.sum()) == 3 * cd,
            "unique_D_neighbour": bool(np.all(nbr_in["D"][outside] == 1)),
        }
        out["all"] = all(out.values())
        out["e_H"] = e_H
        out["size_C"] = int(C.sum())
        out["size_D"] = int(D.sum())
        return out


def claim_graph(n0: int) -> ClaimGraph:
    """Q_2-free H on Q_{n0} with disjoint independent dominating sets C and D."""
    t = (n0 + 1).bit_length() - 1
    if n0 < 3 or (1 << t) != n0 + 1:
        raise ValueError(f"n0 must be 2^t - 1 with t >= 2, got {n0}")
    code = hamming_code(t)
    cols = code.matrix.columns
    syn = code.syndromes
    C = syn == 0
    Ci = [syn == cols[i] for i in range(3)]
    D = Ci[0] | Ci[1] | Ci[2]
    canon = _canonical_masks(n0)
    arr = _edges_meeting(canon, C)  # stage 1

    def add(x: int, y: int) -> None:
        e = EdgeId.between(x, y)
        arr[e.dir - 1, e.base] = 1

    def neighbour_in(x: int, S: np.ndarray) -> list[int]:
        return [x ^ (1 << j) for j in range(n0) if S[x ^ (1 << j)]]

    e1 = 1
    for c in np.flatnonzero(C):
        c = int(c)
        for k in range(4, n0 + 1):
            v_k = cols[k - 1]
            x = c ^ e1 ^ (1 << (k - 1))
            if not v_k & 1:  # stage 2
                add(x, c ^ e1)
            elif not v_k & 2:  # stage 3
                for y in neighbour_in(x, Ci[1]):
                    add(x, y)
            else:  # stage 4
                for y in neighbour_in(x, Ci[2]):
                    add(x, y)
    return ClaimGraph(n0, CubeGraph(n0, arr, copy=False), code, C, D)


@dataclass
class Q2Stages:
    """Intermediate graphs of the Q_2-saturated construction."""

    n: int
    n0: int
    r: int
    claim: ClaimGraph
    initial: CubeGraph
    greedy_set_size: int
    after_greedy: CubeGraph
    final: CubeGraph
    repair_added: int


def q2_saturated_stages(n: int) -> Q2Stages:
    if n < 6:
        raise ValueError(f"need n >= 6, got {n}")
    check_dimension(n)
    _, n0, r = split_length(n, 2)
    claim = claim_graph(n0)
    CD = claim.C | claim.D
    C, D, Harr = claim.C, claim.D, claim.H.array
    mask = (1 << n0) - 1
    idx = np.arange(1 << n, dtype=np.int64)
    p1 = idx & mask
    p2 = (idx >> n0) & mask
    p3 = idx >> (2 * n0)
    w1, w2, w3 = (_popcounts(n0)[p1], _popcounts(n0)[p2], _popcounts(r)[p3] if r else np.zeros_like(idx))
    even_rest1 = (w2 + w3) % 2 == 0  # fixed 1's of (e_2|e_3), star coordinate is 0 at the base
    even_rest2 = (w1 + w3) % 2 == 0
    both = CD[p1] & CD[p2]
    canon = _canonical_masks(n)
    arr = np.zeros_like(canon)
    for d in range(n):
        part = 0 if d < n0 else (1 if d < 2 * n0 else 2)
        type1 = np.zeros(1 << n, dtype=bool)
        type2 = np.zeros(1 << n, dtype=bool)
        type3 = np.zeros(1 << n, dtype=bool)
        if part != 0:
            type1 |= C[p1] & even_rest1
            type2 |= D[p1] & ~even_rest1
        if part != 1:
            type1 |= C[p2] & even_rest2
            type2 |= D[p2] & ~even_rest2
        if part == 0:
            type3 |= Harr[d, p1].astype(bool)
        elif part == 1:
            type3 |= Harr[d - n0, p2].astype(bool)
        row = canon[d].astype(bool) & (type1 | type2 | type3)
        row &= ~(both | both[idx ^ (1 << d)])
        arr[d] = row
    initial = CubeGraph(n, arr)
    greedy_mask = _edges_meeting(canon, both)
    bases, dirs = _ordered(greedy_mask)
    greedy_extend_array(arr, 2, bases, dirs)
    after = CubeGraph(n, arr)
    # non-edges the set above does not complete get one more greedy pass
    all_bases, all_dirs = _ordered(canon)
    repair = greedy_extend_array(arr, 2, all_bases, all_dirs)
    final = CubeGraph(n, arr, copy=False)
    if repair:
        log.info("q2_saturated(%d): repair pass added %d edges", n, repair)
    return Q2Stages(n, n0, r, claim, initial, int(greedy_mask.sum()), after, final, repair)


def q2_saturated(n: int) -> CubeGraph:
    """Q_2-saturated subgraph of Q_n with fewer than 10 * 2^n edges."""
    return q2_saturated_stages(n).final


def weak_sat_tree(n: int) -> CubeGraph:
    """Spanning tree of Q_n, weakly Q_2-saturated: two copies of the tree on
    Q_{n-1} joined along the last direction at vertex 0."""
    check_dimension(n)
    arr = np.zeros((n, 1 << n), dtype=np.uint8)
    arr[0, 0] = 1
    for j in range(2, n + 1):
        half = 1 << (j - 1)
        arr[: j - 1, half: 2 * half] = arr[: j - 1, :half]
        arr[j - 1, 0] = 1
    return CubeGraph(n, arr, copy=False)
