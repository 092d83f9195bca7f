"""Command-line interface: ``gcf <command> ...``.

Exit status is 2 for unparsable input, 1 when an engine rejects its input and
0 otherwise.  ``No`` and ``Unknown`` verdicts are answers and exit 0.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .factor import factor, factor_seed
from .field import FieldError
from .matrix import MatrixError, span_dimension_CD
from .poly import Poly, PolyError, gcd
from .polytype import (
    DEFAULT_BUDGET,
    NilpotentProfile,
    PolytypeError,
    brute_force,
    counterexample_matrix,
    format_certificate,
    nilpotent_decide,
    polytype_decide,
)
from .simtype import eldiv_of_gA, element_data, simtype_of_gCf
from .text import ParseError, format_element, format_matrix, parse_field, parse_matrix, parse_poly

_TIMING_KEYS = ("elapsed", "backend")


def _field_poly(args, *names):
    F = parse_field(args.field)
    return (F, *(parse_poly(getattr(args, n), F) for n in names))


def _profile(text: str) -> NilpotentProfile:
    """``1,3,5`` (block sizes) or ``2^3,1`` (size^count)."""
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        size, _, count = tok.partition("^")
        try:
            sizes += [int(size)] * (int(count) if count else 1)
        except ValueError:
            raise ParseError(f"bad profile entry {tok!r}") from None
    if not sizes or min(sizes) < 1:
        raise ParseError("profile needs positive block sizes")
    return NilpotentProfile.from_sizes(sizes)


def _format_factorization(f: Poly) -> str:
    fac = factor(f)
    parts = []
    for r, e in fac.factors:
        s = str(r)
        if len([c for c in r.coeffs if c]) > 1 and (e > 1 or len(fac.factors) > 1 or fac.unit != 1):
            s = f"({s})"
        parts.append(s if e == 1 else f"{s}^{e}")
    if fac.unit != 1 or not parts:
        parts.insert(0, format_element(fac.unit, f.field))
    return "*".join(parts)


def _print_verdict(v, timing: bool) -> None:
    print(v.summary())
    stats = {k: v2 for k, v2 in v.search_stats.items() if timing or k not in _TIMING_KEYS}
    if stats:
        print(format_certificate(stats), end="")


# -- subcommands -------------------------------------------------------------


def cmd_simtype(args) -> None:
    _, f, g = _field_poly(args, "f", "g")
    print(simtype_of_gCf(f, g).eldivs)


def cmd_eldiv(args) -> None:
    F = parse_field(args.field)
    invs = [parse_poly(s, F) for s in args.invariants.split(",")]
    g = parse_poly(args.g, F)
    print(eldiv_of_gA(invs, g))


def cmd_polytype(args) -> None:
    try:
        text = Path(args.matrix).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.matrix}: {exc.strerror}") from None
    A = parse_matrix(text)
    if args.brute:
        v = brute_force(A, args.budget)
    else:
        v = polytype_decide(A, args.budget)
    _print_verdict(v, args.timing)


def cmd_counterexample(args) -> None:
    print(format_matrix(counterexample_matrix(parse_field(args.field))), end="")


def cmd_nilpotent(args) -> None:
    F = parse_field(args.field)
    prof = _profile(args.profile)
    print(f"profile {prof} n={prof.n} nullities {','.join(map(str, prof.nullities()))}")
    _print_verdict(nilpotent_decide(prof, F), args.timing)


def cmd_factor(args) -> None:
    _, f = _field_poly(args, "poly")
    if f.is_zero():
        raise PolyError("cannot factor the zero polynomial")
    print(_format_factorization(f))


def cmd_span(args) -> None:
    _, f, g = _field_poly(args, "f", "g")
    n, m = f.degree, gcd(f, g).degree
    print(f"dim={span_dimension_CD(f, g)} predicted={n + (n - m) * (n - 1)}")


def cmd_element(args) -> None:
    F, f, g = _field_poly(args, "f", "g")
    data = element_data(f, g)
    print(f"minpoly = {data.minpoly}")
    print(f"trace = {format_element(data.trace, F)}")
    print(f"norm = {format_element(data.norm, F)}")
    print(f"inverse = {data.inverse if data.inverse is not None else 'none'}")
    print("rep =")
    print(format_matrix(data.rep), end="")


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gcf", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for factorization splitting")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *fields):
        sp = sub.add_parser(name, help=help_)
        for flag in fields:
            sp.add_argument(f"--{flag}", required=True)
        sp.set_defaults(func=func)
        return sp

    add("simtype", cmd_simtype, "elementary divisors of g(C_f)", "field", "f", "g")
    add("eldiv", cmd_eldiv, "elementary divisors of g(A) from invariant factors", "field", "invariants", "g")
    sp = add("polytype", cmd_polytype, "decide whether a matrix is similar to some g(C_f)", "matrix")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="pair budget for brute force")
    sp.add_argument("--brute", action="store_true", help="skip the constructive strategies")
    sp.add_argument("--timing", action="store_true", help="also print elapsed time and backend")
    add("counterexample", cmd_counterexample, "matrix J_3(0)+J_1(a) over all a", "field")
    sp = add("nilpotent", cmd_nilpotent, "decide a nilpotent profile such as 1,3,5", "field", "profile")
    sp.add_argument("--timing", action="store_true", help=argparse.SUPPRESS)
    add("factor", cmd_factor, "factor a polynomial", "field", "poly")
    add("span", cmd_span, "dimension of span{C_f^i C_g^j}", "field", "f", "g")
    add("element", cmd_element, "data of g(alpha) for a root alpha of irreducible f", "field", "f", "g")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    token = factor_seed.set(args.seed)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (FieldError, PolyError, MatrixError, PolytypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        factor_seed.reset(token)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
