"""Command line front-end: ``cubesat construct|verify|exact|bounds|table|codes``.

JSON goes to stdout and always carries a ``version`` field. Exit status is
0 when every requested check passes, 1 when a check fails and 2 for an
invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bounds import (
    lower_bound_certificate,
    q2_saturation_bound,
    schedule,
    semi_saturation_bound,
)
from .codes import approximate_hamming_code, certify, hamming_code
from .constructions import (
    base_family,
    iterate_family,
    q2_saturated,
    semi_saturated,
    weak_sat_tree,
    lower_saturated,
    increment_step,
)
from .cube import CubeGraph, load_graph, save_graph
from .verify import exact_min, is_weakly_saturated, verdict

log = logging.getLogger("cubesat")

KINDS = ("base", "increment", "iterate", "semisat", "q2sat", "weaktree")
TABLE_COLUMNS = [
    "kind", "n", "m", "edges", "density", "bound_name", "bound", "within_bound",
    "is_free", "is_semi_saturated", "is_saturated", "error",
]


class ConfigError(ValueError):
    pass


def _emit(payload: dict) -> None:
    print(json.dumps({"version": __version__, **payload}, indent=2, default=str))


def _require(value, name: str):
    if value is None:
        raise ConfigError(f"--{name} is required")
    return value


# -- construct --------------------------------------------------------------------


def build(kind: str, n: int | None, m: int, n0: int | None = None, t: int = 1,
          trials: int = 200, seed: int = 0) -> list[CubeGraph]:
    """Graphs for one construction; families return every member."""
    if kind == "semisat":
        return [semi_saturated(_require(n, "n"), m)]
    if kind == "q2sat":
        if m != 2:
            raise ConfigError("q2sat is a Q_2 construction; use --m 2")
        return [q2_saturated(_require(n, "n"))]
    if kind == "weaktree":
        return [weak_sat_tree(_require(n, "n"))]
    start = n0 if n0 is not None else _require(n, "n")
    if kind == "base":
        return base_family(start, m).graphs
    if kind == "increment":
        fam = base_family(start, m)
        return increment_step(fam, lower_saturated(start, m - 1, seed), trials, seed).graphs
    if kind == "iterate":
        return iterate_family(m, start, t, seed, trials).graphs
    raise ConfigError(f"unknown kind {kind!r}")


def run_construct(args) -> int:
    graphs = build(args.kind, args.n, args.m, args.n0, args.t, args.trials, args.seed)
    best = min(graphs, key=lambda g: g.num_edges)
    if args.out:
        save_graph(best, args.out)
    members = []
    if args.out_family:
        out_dir = Path(args.out_family)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            name = f"{args.kind}_{i}.json"
            save_graph(g, out_dir / name)
            members.append({"file": name, "n": g.n, "edges": g.num_edges, "density": g.density})
        manifest = {
            "version": __version__,
            "kind": args.kind,
            "params": {"n": args.n, "m": args.m, "n0": args.n0, "t": args.t,
                       "trials": args.trials, "seed": args.seed},
            "members": members,
        }
        (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    _emit({
        "command": "construct",
        "kind": args.kind,
        "n": best.n,
        "m": args.m,
        "edges": best.num_edges,
        "density": best.density,
        "family_size": len(graphs),
        "out": args.out,
        "out_family": args.out_family,
    })
    return 0


# -- verify / exact / bounds -------------------------------------------------------


def run_verify(args) -> int:
    g = load_graph(args.input)
    result = {"command": "verify", "n": g.n, "edges": g.num_edges, "check": args.check}
    if args.check == "wsat":
        ok = is_weakly_saturated(g, args.m)
        result["is_weakly_saturated"] = ok
    else:
        v = verdict(g, args.m)
        result.update(v.as_dict(g.n))
        ok = {"sat": v.is_saturated, "semisat": v.is_semi_saturated, "free": v.is_free}[args.check]
    result["ok"] = ok
    _emit(result)
    return 0 if ok else 1


def run_exact(args) -> int:
    if args.n > 4:
        raise ConfigError("exact search supports n <= 4")
    res = exact_min(args.n, args.m, args.mode)
    out = args.out or f"exact_n{args.n}_m{args.m}_{args.mode}.json"
    save_graph(res.witness_graph, out)
    _emit({"command": "exact", **res.as_dict(), "witness_file": out})
    return 0


def run_bounds(args) -> int:
    if args.schedule:
        sched = schedule(args.m, _require(args.n0, "n0"), args.t, args.c_prev)
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["i", "k", "n", "rho", "rho_float"])
            w.writerows(sched.rows())
            sys.stdout.write(buf.getvalue())
        else:
            _emit({"command": "bounds", "schedule": sched.as_dict()})
        return 0
    g = load_graph(_require(args.input, "input"))
    report = lower_bound_certificate(g, args.m)
    _emit({"command": "bounds", **report.as_dict()})
    return 0 if report.all_ok else 1


def run_codes(args) -> int:
    n = args.n
    r = (n + 1).bit_length() - 1
    if (1 << r) == n + 1 and r >= 2:
        code, kind = hamming_code(r), "hamming"
    else:
        code, kind = approximate_hamming_code(n), "approximate"
    payload = {"command": "codes", "kind": kind, "n": n, "r": code.r, "size": code.size,
               "columns": list(code.matrix.columns)}
    ok = True
    if args.certify:
        cert = certify(code)
        payload["certificate"] = cert.as_dict()
        ok = cert.size_ok and cert.min_dist_3 and (cert.dominating or kind == "approximate")
    _emit(payload)
    return 0 if ok else 1


# -- table ----------------------------------------------------------------------------


def _row_bound(kind: str, g: CubeGraph, m: int, n_start: int, t: int):
    n = g.n
    if kind == "semisat":
        return "s-sat upper (m^2+m/2)2^n", semi_saturation_bound(n, m)
    if kind == "q2sat":
        return "sat upper 10*2^n", q2_saturation_bound(n)
    if kind == "weaktree":
        return "w-sat 2^n-1", 2**n - 1
    if kind == "base":
        return "e(Q_n)", n * 2 ** (n - 1)
    steps = 1 if kind == "increment" else t
    sched = schedule(m, n_start, steps)
    return "density recurrence * e(Q_n)", sched.rho[-1] * n * 2 ** (n - 1)


def run_table(m: int, n_range, kinds, *, t: int = 1, trials: int = 200, seed: int = 0) -> str:
    """CSV with one row per (kind, n); a failing row records its error and the run goes on."""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    for kind in kinds:
        for n in n_range:
            row = {c: "" for c in TABLE_COLUMNS}
            row.update(kind=kind, n=n, m=m)
            try:
                graphs = build(kind, n, m, None, t, trials, seed)
                g = min(graphs, key=lambda x: x.num_edges)
                name, bound = _row_bound(kind, g, m, n, t)
                v = verdict(g, m)
                row.update(
                    n=g.n,
                    edges=g.num_edges,
                    density=f"{g.density:.6f}",
                    bound_name=name,
                    bound=f"{float(bound):.6f}",
                    within_bound=g.num_edges <= bound,
                    is_free=v.is_free,
                    is_semi_saturated=v.is_semi_saturated,
                    is_saturated=v.is_saturated,
                )
                if kind == "weaktree":
                    row["within_bound"] = g.num_edges == bound and is_weakly_saturated(g, m)
            except Exception as exc:  # recorded per row by contract
                row["error"] = f"{type(exc).__name__}: {exc}"
            w.writerow(row)
    return buf.getvalue()


def _table(args) -> int:
    n_range = range(args.n_min, args.n_max + 1)
    kinds = [k for k in args.kinds.split(",") if k]
    for k in kinds:
        if k not in KINDS:
            raise ConfigError(f"unknown kind {k!r}")
    text = run_table(args.m, n_range, kinds, t=args.t, trials=args.trials, seed=args.seed)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser -----------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubesat", description=__doc__.splitlines()[0])
    p.add_argument("--verbose", "-v", action="store_true")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph family member and write it as JSON")
    c.add_argument("--kind", choices=KINDS, required=True)
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--n0", type=int)
    c.add_argument("--t", type=int, default=1)
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.add_argument("--out-family", dest="out_family")
    c.set_defaults(func=run_construct)

    v = sub.add_parser("verify", help="saturation verdict for a graph file")
    v.add_argument("--input", required=True)
    v.add_argument("--m", type=int, default=2)
    v.add_argument("--check", choices=("sat", "semisat", "wsat", "free"), default="sat")
    v.set_defaults(func=run_verify)

    e = sub.add_parser("exact", help="exact sat / s-sat / w-sat for tiny n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, default=2)
    e.add_argument("--mode", choices=("sat", "ssat", "wsat"), required=True)
    e.add_argument("--out")
    e.set_defaults(func=run_exact)

    b = sub.add_parser("bounds", help="lower-bound certificate or density schedule")
    b.add_argument("--input")
    b.add_argument("--m", type=int, default=2)
    b.add_argument("--schedule", action="store_true")
    b.add_argument("--n0", type=int)
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--c-prev", dest="c_prev", type=str, default="0")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.set_defaults(func=run_bounds)

    t = sub.add_parser("table", help="CSV of constructions against their bounds")
    t.add_argument("--m", type=int, default=2)
    t.add_argument("--n-min", dest="n_min", type=int, required=True)
    t.add_argument("--n-max", dest="n_max", type=int, required=True)
    t.add_argument("--kinds", default="semisat,q2sat")
    t.add_argument("--t", type=int, default=1)
    t.add_argument("--trials", type=int, default=200)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out")
    t.set_defaults(func=_table)

    k = sub.add_parser("codes", help="Hamming / approximate Hamming code summary")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--certify", action="store_true")
    k.set_defaults(func=run_codes)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "c_prev", None) is not None:
        from fractions import Fraction

        try:
            args.c_prev = Fraction(args.c_prev)
        except ValueError:
            parser.error(f"bad --c-prev {args.c_prev!r}")
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"cubesat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
