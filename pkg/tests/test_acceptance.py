"""One test per acceptance criterion; each prints a PASS/FAIL line with its timing."""

import time
from fractions import Fraction

import numpy as np
import pytest

from cubesat.bounds import lower_bound_certificate, schedule
from cubesat.codes import certify, hamming_code
from cubesat.constructions import (
    base_family,
    claim_graph,
    increment_step,
    lower_saturated,
    q2_saturated,
    semi_saturated,
    uncovered_prefix_subcubes,
    weak_sat_tree,
)
from cubesat.cube import CubeGraph
from cubesat.rng import stream
from cubesat.verify import exact_min, greedy_extend, is_free, new_copies_through, verdict, weak_closure

# time limits in seconds
LIMITS = {1: 1, 2: 1, "2b": 60, 3: 10, "3b": 600, 4: 1, 5: 120, 6: 60, 7: 120, 8: 60, 9: 300, 10: 1}


class Criterion:
    def __init__(self, key, label):
        self.key, self.label = key, label

    def __enter__(self):
        self.t0 = time.perf_counter()
        self.checks = {}
        return self

    def check(self, name, ok):
        self.checks[name] = bool(ok)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        self.check(f"time<{LIMITS[self.key]}s", elapsed < LIMITS[self.key])
        ok = exc_type is None and all(self.checks.values())
        failed = [k for k, v in self.checks.items() if not v]
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {self.key}: {self.label} ({elapsed:.2f}s)"
              + (f" failed={failed}" if failed else ""))
        if exc_type is None:
            assert not failed, failed
        return False


def test_c1_hamming_code():
    with Criterion(1, "hamming_code(3) size 16, distance 3, dominating") as c:
        cert = certify(hamming_code(3))
        c.check("size", cert.size == 16)
        c.check("distance", cert.min_distance == 3)
        c.check("dominating", cert.dominating)


def test_c2_semi_saturation():
    with Criterion(2, "semi_saturated(6,2): 120 edges, <= 192, semi-saturated") as c:
        g = semi_saturated(6, 2)
        c.check("edges", g.num_edges == 120)
        c.check("bound", g.num_edges <= 192)
        c.check("semi", verdict(g, 2).is_semi_saturated)
    with Criterion("2b", "semi_saturated(12,3) semi-saturated, e < 10.5 * 2^12") as c:
        g = semi_saturated(12, 3)
        c.check("semi", verdict(g, 3).is_semi_saturated)
        c.check("bound", g.num_edges < Fraction(21, 2) * 2**12)


def test_c3_q2_saturation_six():
    with Criterion(3, "q2_saturated(6) saturated, e <= 384") as c:
        g = q2_saturated(6)
        c.check("saturated", verdict(g, 2).is_saturated)
        c.check("bound", g.num_edges <= 384)


@pytest.mark.slow
def test_c3_q2_saturation_fourteen():
    with Criterion("3b", "q2_saturated(14) free, semi-saturated, e <= 6 * 2^14") as c:
        g = q2_saturated(14)
        v = verdict(g, 2)
        c.check("free", v.is_free)
        c.check("semi", v.is_semi_saturated)
        c.check("bound", g.num_edges <= 6 * 2**14)


def test_c4_claim_graph():
    with Criterion(4, "claim_graph(7) invariants") as c:
        cert = claim_graph(7).certify()
        for key in ("q2_free", "disjoint", "C_independent", "D_independent", "C_dominating",
                    "D_dominating", "edge_bound"):
            c.check(key, cert[key])
        c.check("e_H<=256", cert["e_H"] <= 2**8)
        c.check("|D|=48", cert["size_D"] == 48)


def test_c5_increment_step():
    with Criterion(5, "increment_step(base_family(4,2), trials=200): 4 saturated graphs covering dirs 1-4") as c:
        fam = base_family(4, 2)
        out = increment_step(fam, lower_saturated(4, 1), trials=200, seed=0)
        c.check("count", out.k == 4 and out.n == 7)
        c.check("saturated", all(verdict(g, 2).is_saturated for g in out.graphs))
        union = np.zeros_like(out.graphs[0].array)
        for g in out.graphs:
            union |= g.array
        c.check("coverage", bool(union[:4].sum() == 4 * 2**6))
        c.check("coverage_prefix", not uncovered_prefix_subcubes(out.graphs, 1, 4, limit=1))


def test_c6_greedy_completion():
    with Criterion(6, "greedy_extend postconditions on 100 random Q_m-free graphs on Q_4") as c:
        ok_free = ok_max = True
        full = CubeGraph.full(4).edges()
        for trial in range(100):
            m = 2 + trial % 2
            rng = stream(2024, "acceptance-greedy", trial)
            seed_edges = [e for e in full if rng.random() < 0.5]
            g = greedy_extend(CubeGraph.empty(4), m, seed_edges)
            S = [full[i] for i in rng.permutation(len(full)) if rng.random() < 0.7]
            out = greedy_extend(g, m, S)
            ok_free &= is_free(out, m) and g.issubgraph(out)
            ok_max &= all(new_copies_through(out, e, m) > 0 for e in S if e not in out)
        c.check("free", ok_free)
        c.check("maximal_on_S", ok_max)


def test_c7_weak_saturation():
    with Criterion(7, "weak_sat_tree(1..8) has 2^n-1 edges and closes; exact wsat n<=3") as c:
        for n in range(1, 9):
            g = weak_sat_tree(n)
            c.check(f"edges{n}", g.num_edges == 2**n - 1)
            c.check(f"closure{n}", weak_closure(g, 2) == CubeGraph.full(n))
        for n in range(1, 4):
            c.check(f"exact{n}", exact_min(n, 2, "wsat").value == 2**n - 1)


def test_c8_exact_values():
    with Criterion(8, "exact sat/ssat at n=2,3 with w-sat <= s-sat <= sat") as c:
        c.check("sat2", exact_min(2, 2, "sat").value == 3)
        c.check("ssat2", exact_min(2, 2, "ssat").value == 3)
        vals = {}
        for mode in ("sat", "ssat", "wsat"):
            res = exact_min(3, 2, mode)
            vals[mode] = res.value
            if mode == "sat":
                c.check("witness_sat", verdict(res.witness_graph, 2).is_saturated)
            if mode == "ssat":
                c.check("witness_ssat", verdict(res.witness_graph, 2).is_semi_saturated)
            c.check(f"size_{mode}", res.witness_graph.num_edges == res.value)
        c.check("order", vals["wsat"] <= vals["ssat"] <= vals["sat"])
        print(f"\n  exact n=3, m=2: {vals}")


def test_c9_lower_bounds():
    with Criterion(9, "good-pair, min degree and connectivity on semi-saturated graphs n<=10") as c:
        graphs = []
        for m in (2, 3):
            for n in range(m, 11):
                graphs.append((f"semisat({n},{m})", semi_saturated(n, m), m))
                for i, g in enumerate(base_family(n, m).graphs):
                    graphs.append((f"base({n},{m})[{i}]", g, m))
        for n in range(6, 11):
            graphs.append((f"q2sat({n})", q2_saturated(n), 2))
        for name, g, m in graphs:
            rep = lower_bound_certificate(g, m)
            c.check(f"semi:{name}", verdict(g, m).is_semi_saturated)
            c.check(f"good_pairs:{name}", rep.good_pair_ok)
            c.check(f"min_degree:{name}", rep.min_degree_ok)
            c.check(f"connected:{name}", rep.connected)


def test_c10_bound_arithmetic():
    with Criterion(10, "schedule(2, 10^4, 14) exact and rho_t < rho_0") as c:
        sched = schedule(2, 10**4, 14)
        rho, k, n = Fraction(1), 3, 10**4
        for _ in range(14):
            rho = (1 - Fraction(1, 2 * k)) * rho + Fraction(k, n) + Fraction(n - (10**4 - 2), k * n)
            n, k = n + k, k + 1
        c.check("exact", sched.rho[-1] == rho)
        c.check("n_t", sched.n[-1] == n)
        c.check("decrement", sched.rho[-1] < sched.rho[0])
        print(f"\n  rho_14 = {float(sched.rho[-1]):.6f}, n_14 = {sched.n[-1]}")
