"""Dense univariate polynomials over a :class:`~gcf.field.Field`.

Coefficients are stored constant term first with no trailing zeros; the zero
polynomial has an empty coefficient tuple and degree -1.

Canonical order (used for every deterministic listing in the package): by
degree, then lexicographically on the coefficient tuple read from the
constant term, with field elements compared by their integer encoding.
"""

from __future__ import annotations

import itertools
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .field import Field

__all__ = [
    "Poly",
    "PolyError",
    "gcd",
    "xgcd",
    "lcm",
    "powmod",
    "compose",
    "compose_mod",
    "crt",
    "resultant",
    "monic_polys",
    "polys_below",
]


class PolyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# list-level kernels; ``a``/``b`` are coefficient lists, results are trimmed


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(F: Field, a, b) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    if F.k == 1:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        add = F.add
        out = [add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return _trim(out)


def _neg(F: Field, a) -> list[int]:
    if F.k == 1:
        p = F.p
        return [-x % p for x in a]
    return [F.neg(x) for x in a]


def _sub(F: Field, a, b) -> list[int]:
    return _add(F, a, _neg(F, b))


def _scale(F: Field, a, c: int) -> list[int]:
    if c == 0:
        return []
    if F.k == 1:
        p = F.p
        return [x * c % p for x in a]
    mul = F.mul
    return [mul(x, c) for x in a]


def _mul(F: Field, a, b) -> list[int]:
    if not a or not b:
        return []
    if F.k == 1:
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % p for c in out])
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _divmod(F: Field, a, b) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], _trim(r)
    quo = [0] * (len(r) - db)
    inv_lc = F.inv(b[-1])
    if F.k == 1:
        p = F.p
        for top in range(len(r) - 1, db - 1, -1):
            c = r[top] * inv_lc % p
            if c:
                quo[top - db] = c
                off = top - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
    else:
        mul, sub = F.mul, F.sub
        for top in range(len(r) - 1, db - 1, -1):
            c = mul(r[top], inv_lc)
            if c:
                quo[top - db] = c
                off = top - db
                for j in range(db + 1):
                    if b[j]:
                        r[off + j] = sub(r[off + j], mul(c, b[j]))
    del r[db:]
    return _trim(quo), _trim(r)


def _mod(F: Field, a, b) -> list[int]:
    if len(a) < len(b):
        return list(a)
    return _divmod(F, a, b)[1]


def _monic(F: Field, a) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    return _scale(F, a, F.inv(a[-1]))


def _gcd(F: Field, a, b) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _mulmod(F: Field, a, b, m) -> list[int]:
    return _mod(F, _mul(F, a, b), m)


def _powmod(F: Field, a, e: int, m) -> list[int]:
    result = _mod(F, [1], m)
    base = _mod(F, a, m)
    while e:
        if e & 1:
            result = _mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = _mulmod(F, base, base, m)
    return result


def _compose_mod(F: Field, outer, inner, m) -> list[int]:
    """outer(inner) reduced mod m by Horner; ``m=None`` means no reduction."""
    acc: list[int] = []
    inner = inner if m is None else _mod(F, inner, m)
    for c in reversed(outer):
        acc = _mul(F, acc, inner)
        if m is not None:
            acc = _mod(F, acc, m)
        acc = _add(F, acc, [c])
    return acc


# ---------------------------------------------------------------------------


class Poly:
    """Immutable polynomial over a finite field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        q = field.q
        for c in cs:
            if not 0 <= c < q:
                raise PolyError(f"coefficient {c} out of range for {field}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(_trim(cs)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, field: Field, coeffs) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls._raw(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c: int) -> "Poly":
        return cls._raw(field, (c,) if c else ())

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls._raw(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls._raw(field, (1,))

    @classmethod
    def monomial(cls, field: Field, c: int, e: int) -> "Poly":
        if c == 0:
            return cls.zero(field)
        return cls._raw(field, (0,) * e + (c,))

    @classmethod
    def linear(cls, field: Field, root: int) -> "Poly":
        """The monic ``X - root``."""
        return cls._raw(field, (field.neg(root), 1))

    @classmethod
    def parse(cls, field: Field, text: str) -> "Poly":
        from .text import parse_poly

        return parse_poly(text, field)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def sort_key(self):
        return (len(self.coeffs), self.coeffs)

    def padded(self, n: int) -> list[int]:
        """Coordinate vector of length ``n`` (constant first); requires degree < n."""
        if len(self.coeffs) > n:
            raise PolyError(f"degree {self.degree} does not fit in {n} coordinates")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise PolyError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.field.scalar(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Poly._raw(self.field, _neg(self.field, self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        return Poly._raw(self.field, _scale(self.field, self.coeffs, c))

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative exponent")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        qu, r = _divmod(self.field, self.coeffs, other.coeffs)
        return Poly._raw(self.field, qu), Poly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        return Poly._raw(self.field, _mod(self.field, self.coeffs, other.coeffs))

    def divides(self, other: "Poly") -> bool:
        return not (other % self).coeffs

    def exact_div(self, other: "Poly") -> "Poly":
        qu, r = divmod(self, other)
        if r:
            raise PolyError("division is not exact")
        return qu

    def monic(self) -> "Poly":
        return Poly._raw(self.field, _monic(self.field, self.coeffs))

    def derivative(self) -> "Poly":
        F = self.field
        return Poly._raw(
            F, _trim([F.mul(F.scalar(i), c) for i, c in enumerate(self.coeffs)][1:])
        )

    def __call__(self, x: int) -> int:
        """Evaluate at a field element."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(X))``."""
        inner = self._coerce(inner)
        return Poly._raw(self.field, _compose_mod(self.field, self.coeffs, inner.coeffs, None))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __lt__(self, other: "Poly"):
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Poly"):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "Poly"):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: "Poly"):
        return self.sort_key() >= other.sort_key()

    def __str__(self):
        from .text import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.field}, {str(self)!r})"

    def __reduce__(self):
        return (Poly, (self.field, self.coeffs))


# ---------------------------------------------------------------------------


def _same_field(*ps: Poly) -> Field:
    F = ps[0].field
    for p in ps[1:]:
        if p.field != F:
            raise PolyError("polynomials over different fields")
    return F


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0)`` is an error."""
    F = _same_field(a, b)
    if not a and not b:
        raise PolyError("gcd of two zero polynomials")
    return Poly._raw(F, _gcd(F, a.coeffs, b.coeffs))


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``d = s*a + t*b`` and ``d`` the monic gcd."""
    F = _same_field(a, b)
    if not a and not b:
        raise PolyError("gcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        qu, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qu * s1
        t0, t1 = t1, t0 - qu * t1
    c = F.inv(r0.lc)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(gcd(a, b)).monic()


def powmod(a: Poly, e: int, m: Poly) -> Poly:
    F = _same_field(a, m)
    return Poly._raw(F, _powmod(F, a.coeffs, e, m.coeffs))


def compose(outer: Poly, inner: Poly) -> Poly:
    return outer.compose(inner)


def compose_mod(outer: Poly, inner: Poly, m: Poly) -> Poly:
    """``outer(inner(X)) mod m`` without expanding the full composition."""
    F = _same_field(outer, inner, m)
    return Poly._raw(F, _compose_mod(F, outer.coeffs, inner.coeffs, m.coeffs))


def product(polys: Iterable[Poly], field: Field) -> Poly:
    return reduce(lambda x, y: x * y, polys, Poly.one(field))


def crt(pairs: Sequence[tuple[Poly, Poly]]) -> Poly:
    """Combine congruences ``g = g_i (mod f_i)`` into one ``g`` of degree < sum deg f_i."""
    if not pairs:
        raise PolyError("empty congruence system")
    F = _same_field(*[x for pr in pairs for x in pr])
    for _, m in pairs:
        if not m.is_monic() or m.degree < 1:
            raise PolyError("CRT moduli must be monic and nonconstant")
    g, M = Poly.zero(F), Poly.one(F)
    for gi, fi in pairs:
        d, s, _ = xgcd(M, fi)
        if not d.is_one():
            raise PolyError("CRT moduli are not pairwise coprime")
        # g' = g + M * s * (gi - g)  (mod M*fi),  since s*M = 1 mod fi
        g = (g + M * ((s * (gi - g)) % fi)) % (M * fi)
        M = M * fi
    return g


def resultant(f: Poly, g: Poly) -> int:
    """Resultant of ``f`` and ``g`` via the Euclidean remainder sequence."""
    F = _same_field(f, g)
    if not f or not g:
        raise PolyError("resultant of a zero polynomial")
    a, b = f.coeffs, g.coeffs
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return F.mul(res, F.pow(b[0], da))
        r = _mod(F, a, b)
        if not r:
            return 0
        dr = len(r) - 1
        # res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        factor = F.pow(b[-1], da - dr)
        if (da * db) % 2:
            factor = F.neg(factor)
        res = F.mul(res, factor)
        a, b = b, r


def monic_polys(field: Field, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree, in canonical order."""
    for low in itertools.product(range(field.q), repeat=degree):
        yield Poly._raw(field, low + (1,))


def polys_of_degree(field: Field, degree: int) -> Iterator[Poly]:
    if degree < 0:
        yield Poly.zero(field)
        return
    for low in itertools.product(range(field.q), repeat=degree):
        for lead in range(1, field.q):
            yield Poly._raw(field, low + (lead,))


def polys_below(field: Field, n: int) -> Iterator[Poly]:
    """All polynomials of degree < n (zero included), in canonical order."""
    for d in range(-1, n):
        yield from polys_of_degree(field, d)
