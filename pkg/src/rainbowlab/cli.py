"""``rainbowlab`` command-line interface.

Subcommands::

    construct --family G1|G2|G3|G4 --n N --k K [--out FILE.json]
    analyze rt --in FILE.json [--per-vertex] [--per-edge]
    analyze claims --in FILE.json --packing FILE2.json
    analyze lemmas --in FILE.json --k K
    search packing --in FILE.json --k K --mode each|global [--budget N] [--witness-out FILE]
    oracle ar --n N --k K [--budget B] [--witness-out FILE.json]
    report transitions --k K [--derived]
    report curves --k K --n-max N [--csv FILE]
    report disprove --k K --n-min A --n-max B [--csv FILE]
    report dirac --in FILE.json --k K

Exit codes: 0 success (``search packing``: FOUND), 1 NONE, 2 budget
exceeded, 64 usage error, 65 unreadable input, 70 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, constructions, oracle, packing
from .ecgraph import EdgeColoredGraph, dumps, read_graph, write_atomic
from .errors import BudgetExceeded, InvalidPacking, InvalidParams, InvariantViolation, RainbowLabError

EX_OK = 0
EX_NONE = 1
EX_BUDGET = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70


class UsageError(Exception):
    pass


class InputError(Exception):
    """An input file is missing, malformed, or fails validation."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _decimal(x: Optional[Fraction], places: int = 6) -> str:
    """Exact decimal when the fraction terminates, else rounded to ``places``."""
    if x is None:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        digits = 0
        y = x
        while y.denominator != 1:
            y *= 10
            digits += 1
        return f"{x.numerator / x.denominator:.{digits}f}" if digits <= 15 else str(x)
    return f"{float(x):.{places}f}"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else x for x in r])
    return buf.getvalue()


def _load_graph(path: str) -> EdgeColoredGraph:
    try:
        return read_graph(path)
    except (OSError, RainbowLabError) as exc:
        raise InputError(f"cannot read graph {path}: {exc}") from None


# -- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    g = constructions.build_construction(args.family, args.n, args.k)
    _emit(dumps(g) + "\n", args.out)
    return EX_OK


def cmd_analyze(args) -> int:
    g = _load_graph(args.input)
    if args.what == "rt":
        per_vertex, per_edge = analysis.rt_counts(g)
        out: dict = {"n": g.n, "rt": sum(per_vertex) // 3}
        if args.per_vertex:
            out["per_vertex"] = per_vertex
        if args.per_edge:
            out["per_edge"] = [[u, v, c] for (u, v), c in sorted(per_edge.items())]
    elif args.what == "claims":
        try:
            data = json.loads(Path(args.packing).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read packing {args.packing}: {exc}") from None
        if not isinstance(data, dict) or "triples" not in data:
            raise InputError("packing JSON needs a 'triples' list")
        try:
            if "centers" in data:
                ctx = analysis.PackingContext.from_dict(g.n, data)
                ctx.validate(g)
            else:
                _, ctx = analysis.max_RF21(g, data["triples"])
        except InvalidPacking as exc:
            raise InputError(f"invalid packing {args.packing}: {exc}") from None
        stats = analysis.claim_audit(g, ctx, budget=args.budget)
        out = {"context": ctx.to_dict(), **stats.to_dict()}
    else:
        out = analysis.lemma_bounds_check(g, args.k).to_dict()
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EX_OK


def cmd_search(args) -> int:
    g = _load_graph(args.input)
    res = packing.find_packing(g, args.k, args.mode, args.budget, workers=args.workers)
    print(f"status={res.status.value} nodes={res.nodes_explored}")
    if res.witness is not None:
        print("witness=" + json.dumps(res.witness.to_dict()))
        if args.witness_out:
            write_atomic(args.witness_out, json.dumps(res.witness.to_dict()) + "\n")
    return {packing.Status.FOUND: EX_OK, packing.Status.NONE: EX_NONE}.get(res.status, EX_BUDGET)


def cmd_oracle(args) -> int:
    try:
        res = oracle.brute_force_ar(args.n, args.k, args.budget, workers=args.workers)
    except BudgetExceeded as exc:
        res = exc.best
    print(f"ar({res.n},{res.k}C3) {'=' if res.completed else '>='} {res.value}")
    print(f"completed={str(res.completed).lower()} nodes={res.nodes}")
    if args.witness_out and res.witness is not None:
        write_atomic(args.witness_out, dumps(res.witness) + "\n")
    return EX_OK if res.completed else EX_BUDGET


def cmd_report(args) -> int:
    if args.what == "transitions":
        table = constructions.exact_transition_table(args.k) if args.derived else constructions.transition_table(args.k)
        rows = [(r.family, _decimal(r.n_low), _decimal(r.n_high), str(r.n_low),
                 "inf" if r.n_high is None else str(r.n_high)) for r in table]
        _emit(_csv_text(["family", "n_low", "n_high", "n_low_exact", "n_high_exact"], rows), args.csv)
    elif args.what == "curves":
        rows = constructions.figure5_curves(args.k, args.n_max)
        _emit(_csv_text(["n", "c(G1)", "c(G2)", "c(G3)", "c(G4)"], rows), args.csv)
    elif args.what == "disprove":
        if args.n_min > args.n_max:
            raise UsageError("--n-min must not exceed --n-max")
        report = constructions.counterexample_report(args.k, range(args.n_min, args.n_max + 1))
        rows = [
            (r.n, r.k, r.counts["G1"], r.counts["G2"], r.counts["G3"], r.counts["G4"],
             r.conjecture1, r.best_family, r.best_value, str(r.violated).lower())
            for r in report
        ]
        header = ["n", "k", "G1", "G2", "G3", "G4", "conjecture1", "best_family", "best_value", "violated"]
        _emit(_csv_text(header, rows), args.csv)
    else:
        g = _load_graph(args.input)
        rep = packing.dirac_rainbow_check(g, args.k, args.budget)
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2) + "\n")
        if rep.theorem_violation:
            return EX_SOFTWARE
    return EX_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbowlab", description="Edge-colored graph workbench for disjoint rainbow triangles.")
    p.add_argument("--workers", type=int, default=packing.default_workers(),
                   help="worker processes (default: $RAINBOWLAB_WORKERS or 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="write one of the G1..G4 colorings")
    c.add_argument("--family", required=True, choices=constructions.FAMILIES)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="rainbow-triangle statistics")
    asub = a.add_subparsers(dest="what", required=True, parser_class=_Parser)
    rt = asub.add_parser("rt")
    rt.add_argument("--in", dest="input", required=True)
    rt.add_argument("--per-vertex", action="store_true")
    rt.add_argument("--per-edge", action="store_true")
    cl = asub.add_parser("claims")
    cl.add_argument("--in", dest="input", required=True)
    cl.add_argument("--packing", required=True)
    cl.add_argument("--budget", type=int)
    lm = asub.add_parser("lemmas")
    lm.add_argument("--in", dest="input", required=True)
    lm.add_argument("--k", type=int, required=True)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="exact disjoint rainbow triangle search")
    ssub = s.add_subparsers(dest="what", required=True, parser_class=_Parser)
    sp = ssub.add_parser("packing")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=["each", "global"], default="each")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--witness-out")
    s.set_defaults(func=cmd_search)

    o = sub.add_parser("oracle", help="brute-force anti-Ramsey numbers")
    osub = o.add_subparsers(dest="what", required=True, parser_class=_Parser)
    ar = osub.add_parser("ar")
    ar.add_argument("--n", type=int, required=True)
    ar.add_argument("--k", type=int, required=True)
    ar.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    ar.add_argument("--witness-out")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("report", help="closed-form tables and checks")
    rsub = r.add_subparsers(dest="what", required=True, parser_class=_Parser)
    tr = rsub.add_parser("transitions")
    tr.add_argument("--k", type=int, required=True)
    tr.add_argument("--derived", action="store_true",
                    help="boundaries derived from the color-count formulas instead of the published table")
    tr.add_argument("--csv")
    cu = rsub.add_parser("curves")
    cu.add_argument("--k", type=int, required=True)
    cu.add_argument("--n-max", type=int, required=True)
    cu.add_argument("--csv")
    dp = rsub.add_parser("disprove")
    dp.add_argument("--k", type=int, required=True)
    dp.add_argument("--n-min", type=int, required=True)
    dp.add_argument("--n-max", type=int, required=True)
    dp.add_argument("--csv")
    di = rsub.add_parser("dirac")
    di.add_argument("--in", dest="input", required=True)
    di.add_argument("--k", type=int, required=True)
    di.add_argument("--budget", type=int)
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except RainbowLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
