"""Similarity type of ``g(C_f)`` and ``g(A)`` computed from polynomials alone.

Nothing here builds ``g(C_f)`` or looks for roots.  For each irreducible
factor ``r`` of ``f`` the minimal polynomial ``p`` of ``g`` modulo ``r`` is an
irreducible factor of the minimal polynomial of ``g(C_f)``, and

    dim ker p(g(C_f))^i = deg gcd(p^i(g(X)), f)

so the nullity sequence ``d_i`` of every ``p`` (and with it the number
``b_i = 2 d_i - d_{i+1} - d_{i-1}`` of elementary divisors ``p^i``) comes from
gcd degrees.  ``gcd(y^i, f) = gcd(h^i, f)`` for ``h = gcd(y, f)`` keeps the
powers small.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .factor import factor, is_irreducible
from .matrix import (
    ElementaryDivisors,
    Matrix,
    MatrixError,
    check_chain,
    companion,
    solve,
)
from .poly import Poly, PolyError, compose_mod, gcd, xgcd

__all__ = [
    "PrimeData",
    "GcfAnalysis",
    "ElementData",
    "CsdReport",
    "min_poly_mod",
    "simtype_of_gCf",
    "eldiv_of_gA",
    "inflate",
    "csd_report",
    "element_data",
    "d_sequence",
]


@dataclass(frozen=True)
class PrimeData:
    p: Poly
    sources: tuple[Poly, ...]  # irreducible factors r of f with min poly p
    d: tuple[int, ...]  # d_1, ..., d_{e+1}; the last entry repeats
    b: tuple[int, ...]  # b_1, ..., b_e

    @property
    def exponents(self) -> list[int]:
        return [i + 1 for i, bi in enumerate(self.b) for _ in range(bi)]


@dataclass(frozen=True)
class GcfAnalysis:
    f: Poly
    g: Poly  # reduced modulo f
    pairs: tuple[tuple[Poly, Poly], ...]  # (r, p)
    primes: tuple[PrimeData, ...]
    eldivs: ElementaryDivisors


def _min_poly_mod(g: Poly, r: Poly) -> Poly:
    F = r.field
    s = r.degree
    powers = [Poly.one(F) % r]
    gr = g % r
    while True:
        nxt = (powers[-1] * gr) % r
        t = len(powers)
        coeffs = solve(F, [pw.padded(s) for pw in powers], nxt.padded(s))
        if coeffs is not None:
            return Poly.monomial(F, 1, t) - Poly(F, coeffs)
        powers.append(nxt)


def min_poly_mod(g: Poly, r: Poly) -> Poly:
    """Monic generator of ``{y : r | y(g(X))}`` for irreducible ``r``."""
    if not is_irreducible(r):
        raise PolyError(f"{r} is not irreducible")
    return _min_poly_mod(g, r.monic())


def d_sequence(p: Poly, g: Poly, f: Poly, use_pat: bool = True) -> tuple[int, ...]:
    """``deg gcd(p^i(g), f) / deg p`` for ``i = 1, 2, ...`` through the first repeat.

    ``use_pat=False`` composes ``p^i`` with ``g`` directly instead of taking
    powers of ``h = gcd(p(g), f)``.
    """
    n = f.degree
    out: list[int] = []
    if use_pat:
        h = gcd(compose_mod(p, g, f), f)
        hi = h
        for _ in range(n + 1):
            out.append(gcd(hi, f).degree)
            if len(out) >= 2 and out[-1] == out[-2]:
                break
            hi = (hi * h) % f
    else:
        pi = p
        for _ in range(n + 1):
            out.append(gcd(compose_mod(pi, g, f), f).degree)
            if len(out) >= 2 and out[-1] == out[-2]:
                break
            pi = pi * p
    k = p.degree
    if any(x % k for x in out):
        raise AssertionError("gcd degree not divisible by deg p")
    return tuple(x // k for x in out)


def _b_from_d(d: Sequence[int]) -> tuple[int, ...]:
    full = (0,) + tuple(d)
    e = len(d) - 1
    return tuple(2 * full[i] - full[i + 1] - full[i - 1] for i in range(1, e + 1))


def simtype_of_gCf(f: Poly, g: Poly, use_pat: bool = True) -> GcfAnalysis:
    """Elementary divisors of ``g(C_f)`` from ``f`` and ``g`` only."""
    if not f.is_monic() or f.degree < 1:
        raise PolyError("f must be monic of degree >= 1")
    if g.field != f.field:
        raise PolyError("f and g over different fields")
    g = g % f
    pairs = []
    by_p: dict[Poly, list[Poly]] = {}
    for r, _ in factor(f).factors:
        p = _min_poly_mod(g, r)
        pairs.append((r, p))
        by_p.setdefault(p, []).append(r)
    primes = []
    divs = []
    for p in sorted(by_p, key=Poly.sort_key):
        d = d_sequence(p, g, f, use_pat=use_pat)
        b = _b_from_d(d)
        primes.append(PrimeData(p, tuple(by_p[p]), d, b))
        divs.extend((p, i + 1) for i, bi in enumerate(b) for _ in range(bi))
    return GcfAnalysis(f, g, tuple(pairs), tuple(primes), ElementaryDivisors(divs))


def eldiv_of_gA(invs: Sequence[Poly], g: Poly) -> ElementaryDivisors:
    """Elementary divisors of ``g(A)`` given the invariant factors of ``A``."""
    check_chain(invs)
    out = ElementaryDivisors()
    for q in invs:
        out = out.merge(simtype_of_gCf(q, g).eldivs)
    return out


def inflate(f: Poly, g: Poly) -> Poly:
    """Monic ``a^(-n) f(g(X))``, ``a`` the leading coefficient of ``g``; degree ``n * deg g``."""
    if g.degree < 1:
        raise PolyError("g must be nonconstant")
    F = f.field
    return f.compose(g).scale(F.inv(F.pow(g.lc, f.degree)))


@dataclass(frozen=True)
class CsdReport:
    semisimple: bool
    cyclic: bool
    eigenvalues_in_F: tuple[int, ...] | None
    diagonalizable: bool | None


def csd_report(invs: Sequence[Poly], g: Poly) -> CsdReport:
    """Semisimplicity, cyclicity and diagonalizability of ``g(A)`` from gcd criteria."""
    check_chain(invs)
    if not invs:
        raise MatrixError("empty invariant factor list")
    f = invs[-1]
    g = g % f
    P = sorted({_min_poly_mod(g, r) for r, _ in factor(f).factors}, key=Poly.sort_key)
    semisimple = True
    deg_ok = True
    for p in P:
        y1 = gcd(compose_mod(p, g, f), f)
        y2 = gcd(compose_mod(p * p, g, f), f)
        semisimple &= y1 == y2
        deg_ok &= y1.degree == p.degree
    cyclic = len(invs) == 1 and deg_ok
    eig = None
    diag = None
    if all(p.degree == 1 for p in P):
        F = f.field
        eig = tuple(F.neg(p[0]) for p in P)
        diag = True
        for a in eig:
            ga = g - a
            diag &= gcd(ga, f) == gcd((ga * ga) % f, f)
    return CsdReport(semisimple, cyclic, eig, diag)


@dataclass(frozen=True)
class ElementData:
    f: Poly
    g: Poly
    rep: Matrix
    minpoly: Poly
    trace: int
    norm: int
    inverse: Poly | None


def element_data(f: Poly, g: Poly) -> ElementData:
    """Data of ``beta = g(alpha)`` in ``F[alpha]``, ``alpha`` a root of irreducible ``f``.

    The multiplication matrix has columns ``[g], C_f[g], ..., C_f^(n-1)[g]``.
    """
    if not f.is_monic() or not is_irreducible(f):
        raise PolyError(f"{f} is not monic irreducible")
    F = f.field
    n = f.degree
    g = g % f
    C = companion(f)
    cols = [g.padded(n)]
    for _ in range(n - 1):
        cols.append(C.apply(cols[-1]))
    rep = Matrix.from_columns(F, cols)
    minpoly = _min_poly_mod(g, f)
    inverse = None
    if g:
        _, s, _ = xgcd(g, f)
        inverse = s % f
    return ElementData(f, g, rep, minpoly, rep.trace(), rep.det(), inverse)
