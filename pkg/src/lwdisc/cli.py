"""Command line front end: ``lwdisc <command> ...``.

Exit codes: 0 success, 1 internal or verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import asymptotics as asy
from . import oracle
from .counts import CLOSED, OPEN, REGION_B, REGION_D, count_family, region_size
from .lattice import (
    ANY,
    CIRCLE,
    HYPERBOLA,
    HYPERBOLA_STAR,
    OPPOSITE,
    BoxGrid,
    LatticeFilter,
    SectorSpec,
    box_table,
    count_sector,
    mobius_sector_count,
)
from .littlewood import FAMILIES
from .verify import NAMES, run_suite

FORMATS = ("csv", "json", "text")


class InputError(Exception):
    """Unsupported or inconsistent input; maps to exit code 2."""


class Table:
    """Rows with a fixed column order; big integers are kept as int."""

    def __init__(self, columns: list[str], rows: list[dict] | None = None):
        self.columns = columns
        self.rows = rows or []

    def add(self, **row):
        self.rows.append(row)


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _json_value(v):
    # integers beyond 2^53 lose precision in most JSON readers
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    return v


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([_cell(row[c]) for c in table.columns])
        return buf.getvalue()
    if fmt == "json":
        objs = [{c: _json_value(row[c]) for c in table.columns} for row in table.rows]
        payload = objs[0] if len(objs) == 1 else objs
        return json.dumps(payload, indent=2) + "\n"
    widths = [max([len(c)] + [len(_cell(r[c])) for r in table.rows]) for c in table.columns]
    lines = ["  ".join(c.ljust(w) for c, w in zip(table.columns, widths)).rstrip()]
    for row in table.rows:
        lines.append("  ".join(_cell(row[c]).ljust(w) for c, w in zip(table.columns, widths)).rstrip())
    return "\n".join(lines) + "\n"


def emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def cmd_count(args) -> int:
    try:
        res = count_family(args.family, args.degree, parallel=args.parallel)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    t = Table(["family", "degree", "count", "tuple_terms"])
    t.add(family=res.family, degree=res.degree, count=res.count, tuple_terms=res.tuple_terms)
    emit(args, render(t, args.format))
    return 0


def cmd_verify(args) -> int:
    only = args.only or None
    results = run_suite(only, args.parallel)
    t = Table(["criterion", "name", "status", "measured"])
    for r in results:
        t.add(criterion=r.number, name=r.name, status="PASS" if r.passed else "FAIL",
              measured="; ".join(f"{k}={v}" for k, v in r.measured.items()))
    ok = all(r.passed for r in results)
    if args.long:
        reps = oracle.odd_degree_scan(oracle.LONG_SCAN_DEGREE, args.parallel, args.checkpoint, long_run=True)
        linear = all(w.has_linear_factor for r in reps for w in r.witnesses)
        witnesses = sum(r.square_disc_count for r in reps)
        t.add(criterion="long", name="odd-degree-29", status="PASS" if linear else "FAIL",
              measured=f"witnesses={witnesses}; all_divisible_by_x_pm_1={linear}")
        ok = ok and linear
    if args.format == "text":
        text = "".join(r.line() + "\n" for r in results)
        if args.long:
            row = t.rows[-1]
            text += f"{row['status']} [long] {row['name']}: {row['measured']}\n"
        emit(args, text)
    else:
        emit(args, render(t, args.format))
    return 0 if ok else 1


def cmd_brute(args) -> int:
    try:
        if args.scan is not None:
            reps = oracle.odd_degree_scan(args.scan, args.parallel, args.checkpoint, long_run=args.long,
                                          min_degree=args.min_degree)
        elif args.degree is not None:
            n = oracle.brute_count(args.scope, args.degree, not args.include_zero, args.parallel)
            t = Table(["scope", "degree", "require_nonzero", "count"])
            t.add(scope=args.scope, degree=args.degree, require_nonzero=not args.include_zero, count=n)
            emit(args, render(t, args.format))
            return 0
        else:
            raise InputError("brute needs --degree or --scan")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.witnesses:
        t = Table(["degree", "mask", "cyclotomic", "divisible_by_x_plus_1", "divisible_by_x_minus_1"])
        for r in reps:
            for w in r.witnesses:
                t.add(degree=r.degree, mask=w.mask, cyclotomic=" ".join(map(str, w.cyclotomic)),
                      divisible_by_x_plus_1=w.divisible_by_x_plus_1, divisible_by_x_minus_1=w.divisible_by_x_minus_1)
    else:
        t = Table(["degree", "total_polys", "square_disc_count", "vanishing_disc_count", "all_divisible_by_x_pm_1"])
        for r in reps:
            t.add(degree=r.degree, total_polys=r.total_polys, square_disc_count=r.square_disc_count,
                  vanishing_disc_count=r.vanishing_disc_count,
                  all_divisible_by_x_pm_1=all(w.has_linear_factor for w in r.witnesses))
    emit(args, render(t, args.format))
    return 0


def cmd_lattice(args) -> int:
    try:
        if args.what == "sector":
            spec = SectorSpec(args.kind, args.slope, args.radius_sq, closed_radius=args.closed)
            flt = LatticeFilter(args.parity, args.coprime)
            if args.mobius:
                if not args.coprime:
                    raise InputError("--mobius computes the coprime count; add --coprime")
                value = mobius_sector_count(spec, args.parity)
            else:
                value = count_sector(spec, flt, args.parallel)
            t = Table(["kind", "slope", "radius_sq", "parity", "coprime", "count"])
            t.add(kind=args.kind, slope=str(args.slope), radius_sq=str(args.radius_sq), parity=args.parity,
                  coprime=args.coprime, count=value)
        elif args.what == "box":
            grid = BoxGrid(args.N, args.family, args.n)
            table = box_table(grid, args.part)
            t = Table(["i", "j", "count"])
            for i in range(1, grid.N + 1):
                for j in range(1, grid.N**2 + 1):
                    t.add(i=i, j=j, count=int(table[i, j]))
        else:
            t = Table(["region", "bound", "boundary", "size"])
            t.add(region=args.region, bound=args.bound, boundary=args.boundary,
                  size=region_size(args.region, args.bound, args.boundary))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    emit(args, render(t, args.format))
    return 0


def cmd_ratio(args) -> int:
    try:
        if args.diagnostic is not None:
            t = Table(["n", "N", "sigma1", "sigma2", "sigma3_bound"])
            for n in args.n:
                d = asy.sigma_split_diagnostic(n, args.diagnostic, args.family, args.parallel)
                t.add(n=d.n, N=d.N, sigma1=d.sigma1, sigma2=d.sigma2, sigma3_bound=d.sigma3_bound)
        else:
            limit = asy.limit_constant(args.family)
            t = Table(["n", "ratio", "limit", "ratio_over_limit"])
            for n in args.n:
                cfg = asy.EstimatorConfig(n, args.T, args.mode)
                rep = asy.ratio_estimate(args.family, cfg, args.parallel)
                t.add(n=n, ratio=rep.ratio, limit=limit, ratio_over_limit=rep.ratio / limit)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    emit(args, render(t, args.format))
    return 0


def cmd_showcase(args) -> int:
    rep = oracle.showcase_report()
    pn = oracle.disc_pn_check(range(1, args.pn_max + 1))
    t = Table(["check", "passed", "detail"])
    t.add(check="taylor", passed=rep.taylor_littlewood and rep.taylor_repeated_factor and not rep.repeated_factor_cyclotomic,
          detail=f"degree {rep.taylor_degree}, all +-1 {rep.taylor_littlewood}, "
                 f"(X^3+X^2-1)^2 divides {rep.taylor_repeated_factor}")
    t.add(check="vanishing_example", passed=rep.example_littlewood and rep.example_discriminant == 0,
          detail=f"degree {rep.example_degree}, all +-1 {rep.example_littlewood}, disc {rep.example_discriminant}")
    t.add(check="disc_pn", passed=pn, detail=f"n = 1..{args.pn_max}")
    emit(args, render(t, args.format))
    return 0 if rep.ok and pn else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--parallel", type=_positive, default=1, help="worker processes (output does not change)")

    p = argparse.ArgumentParser(prog="lwdisc", description="Square discriminants of (skew-)reciprocal Littlewood polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="exact count from the binomial formulas")
    c.add_argument("--family", choices=FAMILIES, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    v.add_argument("--only", nargs="+", choices=NAMES, help="run only these criteria")
    v.add_argument("--long", action="store_true", help="also scan odd degrees up to 29 (hours)")
    v.add_argument("--checkpoint", help="resumable state file for --long")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("brute", parents=[common], help="discriminant-based oracle counts and odd-degree scans")
    b.add_argument("--scope", choices=oracle.SCOPES, default="all")
    b.add_argument("--degree", type=int)
    b.add_argument("--include-zero", action="store_true", help="count vanishing discriminants as squares")
    b.add_argument("--scan", type=int, metavar="MAX_DEGREE", help="scan odd degrees up to MAX_DEGREE")
    b.add_argument("--min-degree", type=int, default=1)
    b.add_argument("--witnesses", action="store_true", help="list every square-discriminant witness")
    b.add_argument("--long", action="store_true", help="allow scans beyond degree 21")
    b.add_argument("--checkpoint", help="resumable state file")
    b.set_defaults(func=cmd_brute)

    lat = sub.add_parser("lattice", help="sector, box and region counts")
    lsub = lat.add_subparsers(dest="what", required=True)
    s = lsub.add_parser("sector", parents=[common])
    s.add_argument("--kind", choices=(CIRCLE, HYPERBOLA, HYPERBOLA_STAR), required=True)
    s.add_argument("--slope", type=_fraction, required=True, help="tan or tanh of the angle, as p/q")
    s.add_argument("--radius-sq", type=_fraction, required=True)
    s.add_argument("--parity", choices=(OPPOSITE, ANY), default=OPPOSITE)
    s.add_argument("--coprime", action="store_true")
    s.add_argument("--mobius", action="store_true", help="coprime count through Moebius inversion")
    s.add_argument("--closed", action="store_true", help="closed radius inequality")
    bx = lsub.add_parser("box", parents=[common])
    bx.add_argument("--family", choices=FAMILIES, required=True)
    bx.add_argument("--N", type=_positive, required=True)
    bx.add_argument("--n", type=_positive, required=True)
    bx.add_argument("--part", choices=("plain", "star", "both"), default="both")
    rg = lsub.add_parser("region", parents=[common])
    rg.add_argument("--region", choices=(REGION_B, REGION_D), required=True)
    rg.add_argument("--bound", type=int, required=True)
    rg.add_argument("--boundary", choices=(CLOSED, OPEN), default=CLOSED)
    lat.set_defaults(func=cmd_lattice)

    r = sub.add_parser("ratio", parents=[common], help="normalized counts against the limit constants")
    r.add_argument("--family", choices=FAMILIES, default="reciprocal")
    r.add_argument("--n", type=int, nargs="+", required=True)
    r.add_argument("--T", type=float, default=20)
    r.add_argument("--mode", choices=(asy.GAUSSIAN, asy.EXACT), default=asy.GAUSSIAN)
    r.add_argument("--diagnostic", type=int, metavar="N", help="emit the Sigma split for box count N instead")
    r.set_defaults(func=cmd_ratio)

    sh = sub.add_parser("showcase", parents=[common], help="check the displayed odd-degree examples")
    sh.add_argument("--pn-max", type=int, default=50)
    sh.set_defaults(func=cmd_showcase)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
