"""Factorization over GF(q): squarefree, distinct-degree, equal-degree splitting."""

from __future__ import annotations

import random
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator

from .field import Field, is_prime
from .poly import Poly, PolyError, gcd, monic_polys, powmod

__all__ = [
    "Factorization",
    "factor",
    "factor_seed",
    "is_irreducible",
    "irreducibles",
    "count_irreducibles",
    "squarefree_decomposition",
]

# Seed for the randomized equal-degree splitting; the CLI's --seed sets it.
factor_seed: ContextVar[int] = ContextVar("factor_seed", default=0)


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def expand(self, field: Field) -> Poly:
        out = Poly.const(field, self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _prime_divisors(n: int) -> list[int]:
    return [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]


def _frobenius(x: Poly, f: Poly, times: int = 1) -> Poly:
    q = f.field.q
    for _ in range(times):
        x = powmod(x, q, f)
    return x


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    X = Poly.x(f.field)
    if _frobenius(X, f, n) != X % f:
        return False
    for r in _prime_divisors(n):
        h = _frobenius(X, f, n // r) - X
        if not h or not gcd(h, f).is_one():
            return False
    return True


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.p
    return Poly(F, [F.pth_root(c) for c in f.coeffs[::p]])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(s, i)`` with ``s`` squarefree, pairwise coprime, ``prod s^i = monic(f)``."""
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.degree < 1:
        return out
    p = f.field.p
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for s, j in squarefree_decomposition(_pth_root(c)):
            out.append((s, j * p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic ``f`` into products of same-degree irreducibles."""
    out = []
    X = Poly.x(f.field)
    h = X % f
    i = 1
    rest = f
    while rest.degree >= 2 * i:
        h = powmod(h, f.field.q, rest)
        g = gcd(rest, h - X)
        if not g.is_one():
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a product of distinct degree-``d`` monic irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f]
    F = f.field
    n = f.degree
    while True:
        a = Poly(F, [rng.randrange(F.q) for _ in range(n)])
        if a.degree < 1:
            continue
        if F.p == 2:
            # absolute trace map into GF(2): a + a^2 + ... + a^(2^(k*d - 1))
            t = a % f
            acc = t
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = powmod(a, (F.q**d - 1) // 2, f) - 1
        g = gcd(f, b) if b else f
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: Poly, seed: int | None = None) -> Factorization:
    """Complete factorization of nonzero ``f``; factors in canonical order."""
    if not f:
        raise PolyError("cannot factor the zero polynomial")
    rng = random.Random(factor_seed.get() if seed is None else seed)
    mult: dict[Poly, int] = {}
    for s, i in squarefree_decomposition(f):
        for g, d in _distinct_degree(s):
            for r in _equal_degree(g, d, rng):
                mult[r] = mult.get(r, 0) + i
    factors = tuple(sorted(mult.items(), key=lambda t: t[0].sort_key()))
    return Factorization(f.lc, factors)


def irreducibles(field: Field, degree: int) -> Iterator[Poly]:
    """Monic irreducibles of the given degree, in canonical order."""
    for f in monic_polys(field, degree):
        if is_irreducible(f):
            yield f


def _mobius(n: int) -> int:
    out = 1
    for r in _prime_divisors(n):
        if n % (r * r) == 0:
            return 0
        out = -out
    return out


def count_irreducibles(field: Field, d: int) -> int:
    """Number of monic irreducibles of degree ``d`` over ``field`` (Moebius sum)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = field.q
    total = sum(_mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d
