"""Command-line front end.

Subcommands: numbers, poly, roots, sample, verify.  Exact rationals are
printed as p/r and serialized as strings; floats only ever appear where
zeros are involved.  Exit codes: 0 success, 1 failed verification,
2 usage or cross-method error, 3 root-finder non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import run_verify
from .determinant import det_appell_poly, det_pair_poly
from .families import (
    AppellFamily,
    FamilyError,
    FamilySpec,
    apply_operator,
    pair_family,
    product_family,
    resolve,
)
from .fmt import decimal_str, frac_str, pair_str, poly_text, real_str
from .qcore import QContext, QPoly, parse_q, parse_rat
from .roots import RootFindingError, find_roots, sample, vieta_residuals

__all__ = ["main"]


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _add_common(sub: argparse.ArgumentParser, q_required: bool = True) -> None:
    sub.add_argument("--q", required=q_required, default=None, help="base q as a fraction, e.g. 1/2")
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--out", default=None, help="write output to this path instead of stdout")


def _add_family_flags(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help="built-in family name")
    group.add_argument("--iterate", metavar="A,B", help="2-iterated pair, e.g. bernoulli,bernoulli")
    group.add_argument("--mixed", metavar="A,B", help="mixed pair, e.g. euler,genocchi-table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qappell",
        description="exact q-Appell polynomial engine: numbers, polynomials, zeros, audits",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_numbers = subs.add_parser("numbers", help="family numbers up to an order")
    _add_common(p_numbers)
    _add_family_flags(p_numbers)
    p_numbers.add_argument("-n", "--n", "--upto", dest="upto", type=int, required=True)
    p_numbers.add_argument(
        "--method",
        choices=("series", "determinant", "operator", "all"),
        default="series",
    )
    p_numbers.set_defaults(func=cmd_numbers)

    p_poly = subs.add_parser("poly", help="one polynomial of the family")
    _add_common(p_poly)
    _add_family_flags(p_poly)
    p_poly.add_argument("-n", "--n", "--upto", dest="n", type=int, required=True)
    p_poly.add_argument(
        "--method",
        choices=("series", "determinant", "operator", "all"),
        default="series",
    )
    p_poly.set_defaults(func=cmd_poly)

    p_roots = subs.add_parser("roots", help="zeros of one polynomial")
    _add_common(p_roots)
    _add_family_flags(p_roots)
    p_roots.add_argument("-n", "--n", "--upto", dest="n", type=int, required=True)
    p_roots.add_argument(
        "--method",
        choices=("series", "determinant", "operator", "all"),
        default="series",
    )
    p_roots.add_argument(
        "--full-precision",
        action="store_true",
        help="print zeros at full double precision instead of 4 decimals",
    )
    p_roots.set_defaults(func=cmd_roots)

    p_sample = subs.add_parser("sample", help="exact samples of one or more polynomials")
    _add_common(p_sample)
    _add_family_flags(p_sample)
    p_sample.add_argument("-n", "--n", dest="n", type=int, default=None)
    p_sample.add_argument("--degrees", help="comma-separated degrees, e.g. 1,2,3,4")
    p_sample.add_argument("--xmin", required=True, help="left endpoint, as a fraction")
    p_sample.add_argument("--xmax", required=True, help="right endpoint, as a fraction")
    p_sample.add_argument("--steps", type=int, default=101)
    p_sample.set_defaults(func=cmd_sample)

    p_verify = subs.add_parser("verify", help="property suite plus reference-table audit")
    _add_common(p_verify, q_required=False)
    p_verify.add_argument("-n", "--n", "--upto", dest="upto", type=int, default=8)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _context(args: argparse.Namespace) -> QContext:
    q_text = args.q if args.q is not None else "1/2"
    try:
        return QContext(parse_q(q_text))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _specs(args: argparse.Namespace) -> tuple[FamilySpec, ...]:
    try:
        if args.family:
            return (FamilySpec.builtin(args.family),)
        pair_text = args.iterate if args.iterate else args.mixed
        names = [s for s in pair_text.split(",") if s.strip()]
        if len(names) != 2:
            raise CliError(f"expected two comma-separated names, got {pair_text!r}")
        return (FamilySpec.builtin(names[0]), FamilySpec.builtin(names[1]))
    except FamilyError as exc:
        raise CliError(str(exc)) from exc


def _label(specs: tuple[FamilySpec, ...]) -> str:
    return "*".join(s.label for s in specs)


def _resolve_order(specs: tuple[FamilySpec, ...], ctx: QContext, order: int) -> AppellFamily:
    try:
        if len(specs) == 1:
            return resolve(specs[0], ctx, order)
        return pair_family(specs[0], specs[1], ctx, order)
    except FamilyError as exc:
        raise CliError(str(exc)) from exc


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _methods(args: argparse.Namespace) -> tuple[str, ...]:
    if getattr(args, "method", "series") == "all":
        return ("series", "determinant", "operator")
    return (args.method,)


def cmd_numbers(args: argparse.Namespace) -> int:
    ctx = _context(args)
    specs = _specs(args)
    if args.upto < 0:
        raise CliError("--upto must be >= 0")
    methods = _methods(args)
    try:
        values = {
            m: [_poly_by_method(specs, ctx, n, m)(0) for n in range(args.upto + 1)]
            for m in methods
        }
    except FamilyError as exc:
        raise CliError(str(exc)) from exc
    if len(methods) > 1 and any(values[m] != values["series"] for m in methods):
        sys.stderr.write("cross-method divergence:\n")
        for m in methods:
            sys.stderr.write(f"  {m}: {[frac_str(v) for v in values[m]]}\n")
        return 2
    rows = list(enumerate(values[methods[0]]))
    if args.format == "json":
        payload = {
            "schema": 1,
            "q": frac_str(ctx.q),
            "family": _label(specs),
            "numbers": [
                {"n": n, "exact": frac_str(v), "decimal": decimal_str(v)} for n, v in rows
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["n,exact,decimal"]
        lines += [f"{n},{frac_str(v)},{decimal_str(v)}" for n, v in rows]
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{_label(specs)} numbers at q = {frac_str(ctx.q)}"]
        lines += [f"  n={n}: {frac_str(v)} = {decimal_str(v)}" for n, v in rows]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0


def _poly_by_method(
    specs: tuple[FamilySpec, ...], ctx: QContext, n: int, method: str
) -> QPoly:
    if len(specs) == 1:
        fam = resolve(specs[0], ctx, n)
        if method == "series":
            return fam.poly(n)
        if method == "determinant":
            return det_appell_poly(fam, n)
        return apply_operator(fam.numbers, QPoly.monomial(n))
    fam_i = resolve(specs[0], ctx, n)
    fam_ii = resolve(specs[1], ctx, n)
    if method == "series":
        return product_family(fam_i, fam_ii).poly(n)
    if method == "determinant":
        return det_pair_poly(fam_i, fam_ii, n)
    return apply_operator(fam_i.numbers, fam_ii.poly(n))


def _poly_payload(p: QPoly) -> dict:
    return {"coeffs": [frac_str(c) for c in p.coeffs], "text": poly_text(p)}


def cmd_poly(args: argparse.Namespace) -> int:
    ctx = _context(args)
    specs = _specs(args)
    if args.n < 0:
        raise CliError("-n must be >= 0")
    methods = ("series", "determinant", "operator") if args.method == "all" else (args.method,)
    try:
        computed = {m: _poly_by_method(specs, ctx, args.n, m) for m in methods}
    except FamilyError as exc:
        raise CliError(str(exc)) from exc
    if args.method == "all":
        series = computed["series"]
        diverging = {m: p for m, p in computed.items() if p != series}
        if diverging:
            sys.stderr.write("cross-method divergence:\n")
            for m in methods:
                sys.stderr.write(f"  {m}: {poly_text(computed[m])}\n")
            return 2
    if args.format == "json":
        payload = {
            "schema": 1,
            "q": frac_str(ctx.q),
            "family": _label(specs),
            "n": args.n,
            "methods": {m: _poly_payload(p) for m, p in computed.items()},
        }
        if args.method == "all":
            payload["agree"] = True
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        p = computed[methods[0]]
        lines = ["power,coefficient"]
        lines += [f"{k},{frac_str(p.coeff(k))}" for k in range(p.degree, -1, -1)]
        text = "\n".join(lines) + "\n"
    else:
        if args.method == "all":
            lines = [f"{m}: {poly_text(p)}" for m, p in computed.items()]
            lines.append("all methods agree")
            text = "\n".join(lines) + "\n"
        else:
            text = poly_text(computed[methods[0]]) + "\n"
    _emit(args, text)
    return 0


def cmd_roots(args: argparse.Namespace) -> int:
    ctx = _context(args)
    specs = _specs(args)
    if args.n < 1:
        raise CliError("-n must be >= 1 for roots")
    methods = _methods(args)
    try:
        computed = {m: _poly_by_method(specs, ctx, args.n, m) for m in methods}
    except FamilyError as exc:
        raise CliError(str(exc)) from exc
    if len(methods) > 1 and any(p != computed["series"] for p in computed.values()):
        sys.stderr.write("cross-method divergence:\n")
        for m in methods:
            sys.stderr.write(f"  {m}: {poly_text(computed[m])}\n")
        return 2
    p = computed[methods[0]]
    try:
        rs = find_roots(p)
    except RootFindingError as exc:
        sys.stderr.write(f"root finding failed: {exc}\n")
        return 3
    vsum, vprod = vieta_residuals(p, rs.roots)

    def fmt_real(v: float) -> str:
        return repr(v) if args.full_precision else real_str(v)

    def fmt_pair(z: complex) -> str:
        if args.full_precision:
            return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"
        return pair_str(z)

    if args.format == "json":
        payload = {
            "schema": 1,
            "q": frac_str(ctx.q),
            "family": _label(specs),
            "n": args.n,
            "poly": poly_text(p),
            "real": [w for w in rs.real_roots],
            "complex": [
                {"re": w.real, "im": w.imag} for pair in rs.complex_pairs for w in pair
            ],
            "residuals": list(rs.residuals),
            "vieta": {"sum": vsum, "product": vprod},
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["type,re,im"]
        for w in rs.real_roots:
            lines.append(f"real,{fmt_real(w)},0")
        for pair in rs.complex_pairs:
            for w in pair:
                lines.append(f"complex,{fmt_real(w.real)},{fmt_real(w.imag)}")
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"polynomial: {poly_text(p)}"]
        lines.append(
            "real zeros: " + (", ".join(fmt_real(w) for w in rs.real_roots) or "(none)")
        )
        lines.append(
            "complex zeros: "
            + (", ".join(fmt_pair(w) for pr in rs.complex_pairs for w in pr) or "(none)")
        )
        lines.append(f"vieta residuals: sum {vsum:.2e}, product {vprod:.2e}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    ctx = _context(args)
    specs = _specs(args)
    if args.degrees:
        try:
            degrees = [int(s) for s in args.degrees.split(",") if s.strip()]
        except ValueError as exc:
            raise CliError(f"bad --degrees list {args.degrees!r}") from exc
    elif args.n is not None:
        degrees = [args.n]
    else:
        raise CliError("sample needs -n or --degrees")
    if not degrees or any(d < 0 for d in degrees):
        raise CliError("degrees must be >= 0")
    try:
        xmin = parse_rat(args.xmin)
        xmax = parse_rat(args.xmax)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.steps < 2:
        raise CliError("--steps must be >= 2")
    if not xmin < xmax:
        raise CliError("--xmin must be < --xmax")
    fam = _resolve_order(specs, ctx, max(degrees))
    columns = {d: sample(fam.poly(d), xmin, xmax, args.steps) for d in degrees}
    xs = [x for x, _ in columns[degrees[0]]]
    if args.format == "json":
        payload = {
            "schema": 1,
            "q": frac_str(ctx.q),
            "family": _label(specs),
            "x": [decimal_str(x) for x in xs],
            "series": {
                str(d): [decimal_str(v) for _, v in columns[d]] for d in degrees
            },
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        # text and csv are the same table
        if len(degrees) == 1:
            header = "x,p(x)"
        else:
            header = "x," + ",".join(f"p{d}(x)" for d in degrees)
        lines = [header]
        for i, x in enumerate(xs):
            row = [decimal_str(x)]
            row += [decimal_str(columns[d][i][1]) for d in degrees]
            lines.append(",".join(row))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ctx = _context(args)
    if args.upto < 4:
        raise CliError("verify needs --upto >= 4 to cover the reference tables")
    if args.format == "csv":
        raise CliError("verify supports text or json output")
    report = run_verify(ctx.q, order=args.upto)
    if args.format == "json":
        text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    else:
        text = report.to_text()
    _emit(args, text)
    return report.exit_code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
