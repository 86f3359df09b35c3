import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubesat import kernels
from cubesat.cube import CubeGraph

from oracle import all_edges, copies, gains

pytestmark = pytest.mark.skipif(not kernels.available("cython"), reason="compiled kernels not built")


def random_array(n, p, seed):
    rng = np.random.default_rng(seed)
    v = np.arange(1 << n)
    canon = np.stack([((v >> d) & 1) == 0 for d in range(n)])
    return np.ascontiguousarray((canon & (rng.random((n, 1 << n)) < p)).astype(np.uint8))


def both(fn, *args):
    out = {}
    for name in ("cython", "python"):
        prev = kernels.use_backend(name)
        try:
            out[name] = fn(*args)
        finally:
            kernels.use_backend(prev)
    return out["cython"], out["python"]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(1, 4), st.floats(0.3, 1.0), st.integers(0, 2**31))
def test_scan_backends_agree(n, m, p, seed):
    arr = random_array(n, p, seed)
    limit = None if seed % 3 else max(1, n - 1)
    (c1, cov1), (c2, cov2) = both(lambda: kernels.scan(arr, m, limit))
    assert c1 == c2
    assert np.array_equal(cov1, cov2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 4), st.floats(0.3, 1.0), st.integers(0, 2**31))
def test_greedy_backends_agree(n, m, p, seed):
    arr = random_array(n, p * 0.5, seed)
    rng = np.random.default_rng(seed + 1)
    order = rng.permutation(n << (n - 1))
    edges = np.array(all_edges(n))[order]
    bases = edges[:, 0]
    dirs = np.array([int(y ^ x).bit_length() - 1 for x, y in edges])
    a1, a2 = arr.copy(), arr.copy()
    prev = kernels.use_backend("cython")
    k1 = kernels.greedy(a1, bases, dirs, m)
    kernels.use_backend("python")
    k2 = kernels.greedy(a2, bases, dirs, m)
    kernels.use_backend(prev)
    assert k1 == k2 and np.array_equal(a1, a2)


def test_scan_matches_oracle(backend):
    for seed in range(6):
        n = 4 + seed % 2
        arr = random_array(n, 0.8, seed)
        g = CubeGraph(n, arr)
        es = {(e.base, e.base | (1 << (e.dir - 1))) for e in g.edges()}
        for m in (1, 2, 3):
            c, cover = kernels.scan(arr, m)
            assert c == copies(n, es, m)
            for x, y in all_edges(n):
                d = (x ^ y).bit_length() - 1
                if (x, y) not in es:
                    assert cover[d, x] == gains(n, es, m, (x, y))
                    assert kernels.new_copies(arr, x, d, m) == cover[d, x]


def test_new_copies_through_present_edge_counts_full_cubes(backend):
    arr = np.ascontiguousarray(CubeGraph.full(4).to_array())
    # every 2-subcube through an edge: 3 companion directions
    assert kernels.new_copies(arr, 0, 0, 2) == 3
    assert kernels.new_copies(arr, 0, 0, 5) == 0


def test_backend_switch():
    prev = kernels.use_backend("python")
    assert kernels.BACKEND == "python"
    kernels.use_backend(prev)
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
