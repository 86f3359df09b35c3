"""Compare the compiled and numpy kernels on scan, new_copies and greedy.

    python benchmarks/bench_kernels.py [--n 12] [--repeat 3]
"""

import argparse
import time

import numpy as np

from cubesat import kernels
from cubesat.constructions import semi_saturated
from cubesat.cube import CubeGraph


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(n):
    g = semi_saturated(n, 2).array
    edges = CubeGraph.full(n).edges()
    bases = np.array([e.base for e in edges], dtype=np.int64)
    dirs = np.array([e.dir - 1 for e in edges], dtype=np.int64)
    probe = [(e.base, e.dir - 1) for e in edges[:: max(1, len(edges) // 500)]]

    def greedy():
        arr = np.zeros((n, 1 << n), dtype=np.uint8)
        kernels.greedy(arr, bases, dirs, 2)

    return {
        "scan m=2": lambda: kernels.scan(g, 2),
        "scan m=3": lambda: kernels.scan(g, 3),
        "new_copies x500": lambda: [kernels.new_copies(g, b, d, 2) for b, d in probe],
        "greedy m=2": greedy,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [b for b in ("cython", "python") if kernels.available(b)]
    results = {}
    for b in backends:
        prev = kernels.use_backend(b)
        for name, fn in workloads(args.n).items():
            results[name, b] = best_of(fn, args.repeat)
        kernels.use_backend(prev)
    print(f"n = {args.n}")
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name in workloads(args.n):
        row = f"{name:<18}" + "".join(f"{results[name, b]:>11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"{results[name, 'python'] / results[name, 'cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
