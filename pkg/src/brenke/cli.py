"""Command-line frontend.

Exit status: 0 on success, 1 on usage or parameter errors, 2 when a
verification or integral check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .brenke_core import brenke_poly, hypergeometric_transfer, transfer_between, xd_phi
from .errors import BrenkeError, ParameterError
from .expansion import (
    addition_coeffs,
    connection_explicit,
    connection_gf_table,
    duplication_coeffs,
    inversion_table,
    linearization_explicit,
    linearization_gf_table,
)
from .oracle import oracle_connection, oracle_linearization
from .quadrature import check_integrals
from .scalar_series import format_scalar, to_scalar
from .special_families import FamilySpec, default_order, make_family
from .verify import SUITES, run_suite

CSV_HELP = """\
CSV columns:
  poly       k,value        coefficient of x**k
  connect    n,m,value      src_n = sum_m value * basis_m
  invert     n,m,value      x**n = sum_m value * P_m
  duplicate  n,m,value      P_n(alpha x) = sum_m value * P_m(x)
  linearize  i,j,k,value    f2_i * f3_j = sum_k value * basis_k
  phi        k,value        XD coefficient phi_k
  addition   n,m,value      coefficient of y**(n-m) P_m(x) in T_y P_n(x)

Family specs are a built-in name (monomial, hermite), a path to a JSON
file, or inline JSON such as '{"family": "gghps", "d": 1, "a": "-1", "mu": "1/2"}'.
BRENKE_DEFAULT_ORDER sets the default truncation order (64 if unset).
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def load_family_spec(text: str) -> FamilySpec:
    """Resolve a built-in name, JSON file path or inline JSON string."""
    name = text.strip().lower().replace("-", "_")
    if name in ("monomial", "hermite"):
        return FamilySpec(name, {})
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"malformed family spec {text!r}: not a built-in name, file or JSON ({exc.msg})") from exc
    return FamilySpec.from_json(data)


def _family(text: str, order: int):
    return make_family(load_family_spec(text), order)


def _value(v: Fraction, mode: str):
    return format_scalar(v) if mode == "exact" else float(v)


def _csv_value(v: Fraction, mode: str) -> str:
    return format_scalar(v) if mode == "exact" else repr(float(v))


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _emit_table(rows, mode: str, fmt: str, kind: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        lines = ["n,m,value"]
        for n, row in enumerate(rows):
            lines += [f"{n},{m},{_csv_value(v, mode)}" for m, v in enumerate(row)]
        return "\n".join(lines) + "\n"
    obj = {"kind": kind, "n_max": len(rows) - 1}
    obj.update(extra or {})
    obj["entries"] = [[_value(v, mode) for v in row] for row in rows]
    return json.dumps(obj, indent=2) + "\n"


def _emit_vector(values, mode: str, fmt: str, kind: str, key: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        lines = ["k,value"] + [f"{k},{_csv_value(v, mode)}" for k, v in enumerate(values)]
        return "\n".join(lines) + "\n"
    obj = {"kind": kind}
    obj.update(extra or {})
    obj[key] = [_value(v, mode) for v in values]
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -----------------------------------------------------------


def cmd_poly(args) -> tuple[int, str]:
    fam = _family(args.family, args.order)
    p = brenke_poly(fam, args.n)
    coeffs = list(p.coeffs) or [Fraction(0)]
    return 0, _emit_vector(coeffs, args.mode, args.format, "polynomial", "coeffs", {"family": fam.label, "n": args.n})


_CONNECT = {"explicit": connection_explicit, "gf": connection_gf_table, "oracle": oracle_connection}
_LINEARIZE = {"explicit": linearization_explicit, "gf": linearization_gf_table, "oracle": oracle_linearization}


def cmd_connect(args):
    src = _family(args.src, args.order)
    basis = _family(args.basis, args.order)
    table = _CONNECT[args.method](src, basis, args.n_max)
    if args.mode == "exact" and args.format == "json":
        return 0, json.dumps(table.to_json(), indent=2) + "\n"
    return 0, _emit_table(table.rows, args.mode, args.format, "connection")


def cmd_invert(args):
    fam = _family(args.family, args.order)
    table = inversion_table(fam, args.n_max)
    return 0, _emit_table(table.rows, args.mode, args.format, "inversion")


def cmd_duplicate(args):
    fam = _family(args.family, args.order)
    alpha = to_scalar(args.alpha)
    table = duplication_coeffs(fam, alpha, args.n_max)
    return 0, _emit_table(table.rows, args.mode, args.format, "duplication", {"alpha": format_scalar(alpha)})


def cmd_linearize(args):
    basis = _family(args.basis, args.order)
    f2 = _family(args.f2, args.order)
    f3 = _family(args.f3, args.order)
    table = _LINEARIZE[args.method](basis, f2, f3, args.i, args.j)
    if args.format == "csv":
        lines = ["i,j,k,value"] + [
            f"{table.i},{table.j},{k},{_csv_value(v, args.mode)}" for k, v in enumerate(table.entries)
        ]
        return 0, "\n".join(lines) + "\n"
    obj = table.to_json()
    obj["L"] = [_value(v, args.mode) for v in table.entries]
    return 0, json.dumps(obj, indent=2) + "\n"


def cmd_phi(args):
    if args.gammas is not None or args.deltas is not None:
        gammas = [to_scalar(g) for g in (args.gammas or [])]
        deltas = [to_scalar(d) for d in (args.deltas or [])]
        theta = hypergeometric_transfer(gammas, deltas)
    elif args.src and args.basis:
        theta = transfer_between(_family(args.basis, args.order), _family(args.src, args.order))
    else:
        raise ParameterError("phi needs either --src and --basis, or --gammas/--deltas")
    values = [xd_phi(theta, k) for k in range(args.k_max + 1)]
    return 0, _emit_vector(values, args.mode, args.format, "phi", "phi")


def cmd_addition(args):
    fam = _family(args.family, args.order)
    c = addition_coeffs(fam, args.n)
    if args.format == "csv":
        lines = ["n,m,value"] + [f"{args.n},{m},{_csv_value(v, args.mode)}" for m, v in enumerate(c)]
        return 0, "\n".join(lines) + "\n"
    return 0, _emit_vector(c, args.mode, "json", "addition", "coeffs", {"family": fam.label, "n": args.n})


def cmd_verify(args):
    results = run_suite(args.suite, args.n_max)
    report = [{"check": r.name, "pass": r.passed, "detail": r.detail} for r in results]
    text = "\n".join(r.line() for r in results) + "\n" if args.format == "text" else json.dumps(report, indent=2) + "\n"
    return (0 if all(r.passed for r in results) else 2), text


def cmd_check_integrals(args):
    reports = check_integrals(args.n_max, args.tol)
    return (0 if all(r["pass"] for r in reports) else 2), json.dumps(reports, indent=2) + "\n"


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="brenke",
        description="Exact connection and linearization coefficients for Brenke polynomial families.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--order", type=_nonneg, default=None, help="truncation order of the A-series")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("poly", parents=[common], help="coefficients of P_n")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("connect", parents=[common], help="connection table src -> basis")
    p.add_argument("--src", required=True)
    p.add_argument("--basis", required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--method", choices=sorted(_CONNECT), default="explicit")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("linearize", parents=[common], help="linearization of f2_i * f3_j in basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--f2", required=True)
    p.add_argument("--f3", required=True)
    p.add_argument("--i", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--method", choices=sorted(_LINEARIZE), default="explicit")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("invert", parents=[common], help="monomials in the family basis")
    p.add_argument("--family", required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("duplicate", parents=[common], help="P_n(alpha x) in the basis P_m(x)")
    p.add_argument("--family", required=True)
    p.add_argument("--alpha", required=True, help="exact rational, e.g. 2 or 1/2")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_duplicate)

    p = sub.add_parser("phi", parents=[common], help="XD coefficients of a transfer operator")
    p.add_argument("--src")
    p.add_argument("--basis")
    p.add_argument("--gammas", nargs="*")
    p.add_argument("--deltas", nargs="*")
    p.add_argument("--k-max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("addition", parents=[common], help="generalized translation coefficients")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_addition)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--n-max", type=_nonneg, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-integrals", help="quadrature checks as a JSON report")
    p.add_argument("--n-max", type=_nonneg, default=10)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_check_integrals)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if getattr(args, "order", None) is None:
        try:
            args.order = default_order()
        except BrenkeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    try:
        status, text = args.func(args)
    except BrenkeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
