import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubesat.cube import CubeGraph, EdgeId, SubcubePattern, subcube_edges
from cubesat.rng import stream
from cubesat.verify import (
    NotFreeError,
    check_mode,
    completion_counts,
    count_copies,
    edge_order,
    exact_min,
    find_copy,
    greedy_extend,
    is_free,
    is_weakly_saturated,
    new_copies_through,
    uncovered_non_edges,
    verdict,
    weak_closure,
    weak_closure_sequential,
)

import oracle
from oracle import all_edges, pairs


def random_graph(n, p, rng):
    return CubeGraph.from_edges(n, [EdgeId.between(x, y) for x, y in all_edges(n) if rng.random() < p])


@st.composite
def small_graphs(draw, n_max=4):
    n = draw(st.integers(1, n_max))
    bits = draw(st.lists(st.booleans(), min_size=n << (n - 1), max_size=n << (n - 1)))
    return CubeGraph.from_edges(n, [EdgeId.between(x, y) for (x, y), b in zip(all_edges(n), bits) if b])


@settings(max_examples=80, deadline=None)
@given(small_graphs(), st.integers(1, 3))
def test_verdict_matches_oracle(g, m):
    es = pairs(g)
    v = verdict(g, m)
    assert v.copies == oracle.copies(g.n, es, m) if m <= g.n else v.copies == 0
    assert v.is_semi_saturated == oracle.is_semi_saturated(g.n, es, m)
    assert v.is_saturated == oracle.is_saturated(g.n, es, m)
    if not v.is_free:
        assert isinstance(v.witness, SubcubePattern)
        assert all(e in g for e in subcube_edges(v.witness))
    elif not v.is_semi_saturated:
        assert isinstance(v.witness, EdgeId) and v.witness not in g


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(1, 3))
def test_new_copies_through_bruteforce(g, m):
    es = pairs(g)
    cover = completion_counts(g, m)
    for e in g.non_edges()[:6]:
        pair = (e.base, e.base | (1 << (e.dir - 1)))
        expected = oracle.gains(g.n, es, m, pair) if m <= g.n else 0
        assert new_copies_through(g, e, m) == expected
        if m <= g.n:
            assert cover[e.dir - 1, e.base] == expected


def test_new_copies_through_rejects_present_edge():
    with pytest.raises(ValueError):
        new_copies_through(CubeGraph.full(3), EdgeId(0, 1), 2)


def test_full_and_empty_verdicts():
    v = verdict(CubeGraph.full(4), 2)
    assert v.copies == 24 and not v.is_free and v.is_semi_saturated
    assert find_copy(CubeGraph.full(4), 2) == SubcubePattern(0b11, 0)
    e = verdict(CubeGraph.empty(4), 2)
    assert e.is_free and not e.is_semi_saturated and e.witness == EdgeId(0, 1)
    assert count_copies(CubeGraph.full(5), 3) == 40
    assert verdict(CubeGraph.full(2), 3).is_saturated
    assert verdict(CubeGraph.empty(2), 3).witness == EdgeId(0, 1)


def test_uncovered_lists_all():
    g = CubeGraph.from_edges(3, [EdgeId(0, 1), EdgeId(0, 2), EdgeId(2, 1)])
    assert uncovered_non_edges(g, 2) == [e for e in g.non_edges() if e != EdgeId(1, 2)]


def test_verdict_serialises():
    d = verdict(CubeGraph.full(3), 2).as_dict(3)
    assert d["witness"] == {"kind": "copy", "pattern": "**0"}
    assert d["is_saturated"] is False


@pytest.mark.parametrize("m", [2, 3])
def test_greedy_postconditions_random(m):
    for trial in range(25):
        rng = stream(11, "greedy", m, trial)
        g = greedy_extend(random_graph(4, 0.3, rng), m, [], check=False)
        g = greedy_extend(CubeGraph.empty(4), m, g.edges())
        assert is_free(g, m)
        S = [e for e in CubeGraph.full(4).edges() if rng.random() < 0.6]
        out = greedy_extend(g, m, S)
        assert g.issubgraph(out) and is_free(out, m)
        es = pairs(out)
        for e in S:
            if e not in out:
                assert oracle.gains(4, es, m, (e.base, e.base | (1 << (e.dir - 1)))) > 0


def test_greedy_over_everything_is_saturated():
    for n in range(2, 6):
        g = greedy_extend(CubeGraph.empty(n), 2, edge_order(n))
        assert verdict(g, 2).is_saturated


def test_greedy_rejects_non_free():
    with pytest.raises(NotFreeError):
        greedy_extend(CubeGraph.full(3), 2, [])


@settings(max_examples=50, deadline=None)
@given(small_graphs(), st.integers(1, 3), st.randoms(use_true_random=False))
def test_weak_closure_order_independent(g, m, rnd):
    order = CubeGraph.full(g.n).edges()
    shuffled = list(order)
    rnd.shuffle(shuffled)
    a = weak_closure(g, m)
    assert a == weak_closure_sequential(g, m, order) == weak_closure_sequential(g, m, shuffled)
    if g.n <= 3:
        assert is_weakly_saturated(g, m) == oracle.is_weakly_saturated(g.n, pairs(g), m)


def test_check_mode_dispatch():
    g = CubeGraph.full(3)
    assert check_mode(g, 2, "ssat") and check_mode(g, 2, "wsat") and not check_mode(g, 2, "sat")
    with pytest.raises(ValueError):
        check_mode(g, 2, "nope")


def exhaustive_oracle(n, m, mode):
    edges = all_edges(n)
    test = {"sat": oracle.is_saturated, "ssat": oracle.is_semi_saturated, "wsat": oracle.is_weakly_saturated}[mode]
    best = None
    for mask in range(1 << len(edges)):
        chosen = [e for i, e in enumerate(edges) if mask >> i & 1]
        if (best is None or len(chosen) < best) and test(n, chosen, m):
            best = len(chosen)
    return best


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mode", ["sat", "ssat", "wsat"])
def test_exact_small_against_oracle(n, mode):
    assert exact_min(n, 2, mode).value == exhaustive_oracle(n, 2, mode)


def test_exact_three_witnesses():
    values = {}
    for mode in ("sat", "ssat", "wsat"):
        res = exact_min(3, 2, mode)
        assert res.witness_graph.num_edges == res.value
        assert check_mode(res.witness_graph, 2, mode)
        values[mode] = res.value
    assert values["wsat"] <= values["ssat"] <= values["sat"]
    assert values["wsat"] == 7


def test_branch_and_bound_agrees_with_sweep():
    from cubesat.verify import _branch_and_bound

    for m in (1, 2, 3):
        for mode in ("sat", "ssat"):
            assert _branch_and_bound(3, m, mode).value == exact_min(3, m, mode).value


def test_exact_rejects_unsupported():
    with pytest.raises(ValueError):
        exact_min(4, 2, "wsat")
    with pytest.raises(ValueError):
        exact_min(5, 2, "sat")
    with pytest.raises(ValueError):
        exact_min(3, 2, "bogus")


@pytest.mark.slow
def test_exact_four():
    res = exact_min(4, 2, "sat")
    assert verdict(res.witness_graph, 2).is_saturated and res.value == res.witness_graph.num_edges


def test_rng_streams_reproducible():
    a = stream(3, "x", 1).integers(0, 1 << 30, 5)
    b = stream(3, "x", 1).integers(0, 1 << 30, 5)
    c = stream(3, "x", 2).integers(0, 1 << 30, 5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)
