"""Command-line interface: ``hyperlie {cocycle,reduce,genfun,units,verify}``.

Every artifact is exact: numbers are canonical rational-function strings,
never floats, and output is byte-identical for identical arguments.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .central_extension import KINDS, basis_label, cocycle_table, reduce_power
from .exact_algebra import AlgebraError
from .genfun import DEFAULT_ORDER, build_ode_data, emit, genfun_solve, series_rows
from .hyperelliptic_ring import Curve, CurveError
from .parsing import ParseError, parse_laurent, parse_rational
from . import unit_families as uf
from . import verify as vf

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
ORDER_ENV = "HYPERLIE_ORDER"


class UnsupportedError(ValueError):
    """The input is well formed but outside what the requested computation covers."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_curve(spec: str) -> Curve:
    """Curve from text; rejects non-monic input and repeated roots."""
    return Curve.from_laurent(parse_laurent(spec))


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        val = int(raw)
    except ValueError:
        raise UnsupportedError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None
    if val < 0:
        raise UnsupportedError(f"{ORDER_ENV} must be nonnegative, got {val}")
    return val


def parse_range(text: str) -> range:
    """'a:b' (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' with integers, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _csv(header: list[str], rows: list[list[str]]) -> str:
    """Comma-space separated table; canonical field strings never contain commas."""
    return "".join(", ".join(row) + "\n" for row in [header, *rows])


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_cocycle(args) -> int:
    curve = parse_curve(args.curve)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    s_range = args.s_range or args.range
    if args.method == "closed" and curve.l == 1 and curve.degree != 2:
        raise UnsupportedError("closed forms for l = 1 exist only for t^2 - 2bt; use --method direct")
    table = cocycle_table(curve, kinds, args.range, s_range, args.method)
    if args.format == "json":
        _write(_json(table), args.out)
    else:
        rows = [[e["kind"], str(e["r"]), str(e["s"])] + list(e["coords"].values()) for e in table["entries"]]
        _write(_csv(["kind", "r", "s"] + table["basis"], rows), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    curve = parse_curve(args.curve)
    powers = args.power if args.power is not None else args.powers
    basis = curve.basis_exponents()
    labels = [basis_label(k) for k in basis]
    entries = []
    for k in powers:
        v = reduce_power(k, curve)
        entries.append({"k": k, "omega0": str(v.coord("omega0")), "coords": {basis_label(e): str(v.coord(e)) for e in basis}})
    if args.format == "json":
        _write(_json({"curve": str(curve), "basis": labels, "classes": entries}), args.out)
    else:
        rows = [[str(e["k"])] + [e["coords"][lab] for lab in labels] for e in entries]
        _write(_csv(["k"] + labels, rows), args.out)
    return EXIT_OK


def cmd_genfun(args) -> int:
    curve = parse_curve(args.curve)
    if curve.l != 0:
        raise UnsupportedError("generating functions are implemented for l = 0 curves only")
    order = args.order if args.order is not None else default_order()
    data = build_ode_data(curve, args.index, args.direction)
    series = genfun_solve(data, order, args.method)
    rows = series_rows(curve, args.index, args.direction, series)
    if args.format == "json":
        _write(emit(rows, "json"), args.out)
    else:
        _write(_csv(list(rows[0]), [[str(v) for v in r.values()] for r in rows]), args.out)
    return EXIT_OK


def cmd_units(args) -> int:
    beta = None
    if args.beta != "symbolic":
        beta = parse_rational(args.beta)
    rows = uf.family_dump(args.family, args.order, beta)
    if args.format == "json":
        _write(_json(rows), args.out)
    else:
        out = [[r["family"], r["beta"], str(r["n"]), r["scaled"], r["const"],
                str(r["ledger"]["mu"]), str(r["ledger"]["nu"]), str(r["ledger"]["rho"])] for r in rows]
        _write(_csv(["family", "beta", "n", "scaled", "const", "mu", "nu", "rho"], out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "all":
        results = vf.run_all(args.seed)
    else:
        try:
            number = int(args.suite)
            results = [vf.run_suite(number, args.seed)]
        except (ValueError, KeyError):
            raise UnsupportedError(f"unknown suite {args.suite!r}; expected 'all' or 1..{len(vf.SUITES)}") from None
    cert = vf.certificate(results, args.seed)
    if args.out:
        _write(_json(cert), args.out)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.number:>2} {r.name}")
        for c in r.failing():
            print(f"       {c.label}: {c.detail}")
    return EXIT_OK if cert["passed"] else EXIT_FAILED


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperlie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cocycle", help="grid of cocycle values psi(r, s)")
    c.add_argument("--curve", required=True)
    c.add_argument("--kind", choices=KINDS + ("all",), default="all")
    c.add_argument("--range", type=parse_range, default=parse_range("-4:4"), help="r range 'lo:hi' (also s unless --s-range)")
    c.add_argument("--s-range", type=parse_range, default=None)
    c.add_argument("--method", choices=("direct", "closed"), default="direct")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_cocycle)

    r = sub.add_parser("reduce", help="class of t^k in the basis of R/dR")
    r.add_argument("--curve", required=True)
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--power", type=int, nargs="+")
    g.add_argument("--powers", type=parse_range)
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("genfun", help="generating function P_i or Q_i as a truncated series")
    s.add_argument("--curve", required=True)
    s.add_argument("--index", type=int, required=True)
    s.add_argument("--direction", choices=("forward", "backward"), default="forward")
    s.add_argument("--order", type=int, default=None, help=f"truncation order (default ${ORDER_ENV} or {DEFAULT_ORDER})")
    s.add_argument("--method", choices=("recursion", "integrating_factor"), default="recursion")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_genfun)

    u = sub.add_parser("units", help="dump a radical-free polynomial family")
    u.add_argument("--family", choices=("u", "v", "a", "b", "c", "d"), required=True)
    u.add_argument("--order", type=int, default=8)
    u.add_argument("--beta", default="symbolic", help="'symbolic' or a rational such as 17/8")
    u.add_argument("--format", choices=("json", "csv"), default="json")
    u.add_argument("--out")
    u.set_defaults(func=cmd_units)

    v = sub.add_parser("verify", help="run acceptance suites and write a certificate")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


_RANGE_FLAGS = ("--range", "--s-range", "--powers")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """'--range -4:4' -> '--range=-4:4' so argparse does not read -4:4 as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except (ParseError, CurveError, UnsupportedError, AlgebraError, ValueError) as exc:
        kind = "unsupported" if isinstance(exc, UnsupportedError) else "error"
        print(f"hyperlie {args.command}: {kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "parse_curve", "parse_range", "build_parser", "UnsupportedError"]
