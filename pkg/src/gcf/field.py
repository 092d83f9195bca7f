"""Finite fields GF(p^k).

Elements are plain ints in ``range(q)``.  An element ``e`` of GF(p^k) stands for
the polynomial ``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` in the generator ``t``,
where ``c_j`` is the j-th base-p digit of ``e``.  Integer order on the encodings
is the canonical element order, so enumeration starts at 0, then 1, ...
"""

from __future__ import annotations

import itertools
from functools import cached_property

__all__ = ["Field", "field_make", "is_prime", "FieldError"]


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _digits(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        e, r = divmod(e, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    e = 0
    for c in reversed(ds):
        e = e * p + c
    return e


class Field:
    """The finite field with ``q = p**k`` elements.

    For ``k > 1`` the field is ``F_p[t]/(modulus)``; ``modulus`` is kept as a
    tuple of residues, constant term first, monic of degree ``k``.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                m = [int(c) % p for c in _coeffs_of(modulus)]
                if len(m) != 2 or m[1] != 1:
                    raise FieldError("modulus must be monic of degree 1")
            self.modulus = None
            return
        if modulus is None:
            modulus = least_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in _coeffs_of(modulus))
            while modulus and modulus[-1] == 0:
                modulus = modulus[:-1]
            if len(modulus) != k + 1:
                raise FieldError(f"modulus must have degree {k}")
            if modulus[-1] != 1:
                raise FieldError("modulus must be monic")
            if not _prime_poly_irreducible(modulus, p):
                raise FieldError("modulus is reducible over GF(%d)" % p)
        self.modulus = modulus
        self._build_tables()

    # -- construction helpers -------------------------------------------
    def _slow_mul(self, a: int, b: int) -> int:
        p, k, m = self.p, self.k, self.modulus
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for j in range(k + 1):
                    prod[top - k + j] = (prod[top - k + j] - c * m[j]) % p
        return _undigits(prod[:k], p)

    def _build_tables(self):
        q = self.q
        for gen in range(2, q):
            exp = [1]
            x = gen
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, gen)
            if len(exp) == q - 1:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = exp
        self._log = log
        if self.p != 2 and q <= 1024:
            p, k = self.p, self.k
            digs = [_digits(e, p, k) for e in range(q)]
            self._addt = [
                [_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q)]
                for a in range(q)
            ]
        else:
            self._addt = None

    # -- arithmetic ------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._addt is not None:
            return self._addt[a][b]
        p = self.p
        da, db = _digits(a, p, self.k), _digits(b, p, self.k)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return _undigits([-x % p for x in _digits(a, p, self.k)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % (self.q - 1)]

    def scalar(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.q // self.p)

    # -- enumeration / encoding -------------------------------------------
    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def vector(self, a: int) -> list[int]:
        return _digits(a, self.p, self.k)

    def from_vector(self, vec) -> int:
        vec = [int(c) % self.p for c in vec]
        if len(vec) > self.k:
            # reduce t-polynomial modulo the defining polynomial
            m = self.modulus
            for top in range(len(vec) - 1, self.k - 1, -1):
                c = vec[top]
                if c:
                    for j in range(self.k + 1):
                        vec[top - self.k + j] = (vec[top - self.k + j] - c * m[j]) % self.p
            vec = vec[: self.k]
        return _undigits(vec, self.p)

    @cached_property
    def tables(self):
        """Flat ``(add, mul, neg, inv)`` int tables, row-major ``q*q`` for the binary ops."""
        q = self.q
        add = [self.add(a, b) for a in range(q) for b in range(q)]
        mul = [self.mul(a, b) for a in range(q) for b in range(q)]
        neg = [self.neg(a) for a in range(q)]
        inv = [0] + [self.inv(a) for a in range(1, q)]
        return add, mul, neg, inv

    # -- identity ---------------------------------------------------------
    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return self.q

    def __str__(self):
        from .text import format_field

        return format_field(self)

    def __repr__(self):
        return f"Field({str(self)!r})"

    def __reduce__(self):
        return (Field, (self.p, self.k, self.modulus))


def _coeffs_of(modulus):
    return getattr(modulus, "coeffs", modulus)


# Prime-field polynomial helpers used only while choosing/validating a modulus;
# the general machinery lives in gcf.poly and needs a Field to exist first.

def _pp_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lc = pow(m[-1], -1, p)
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] * inv_lc % p
        if c:
            for j in range(dm + 1):
                a[top - dm + j] = (a[top - dm + j] - c * m[j]) % p
    a = a[:dm] if len(a) > dm else a
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pp_mod([c % p for c in out], m, p)


def _pp_gcd_is_one(a, b, p) -> bool:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pp_mod(a, tuple(b), p)
    return len(a) == 1


def _pp_frobenius_power(m, p, times):
    """X^(p^times) mod m."""
    x = [0, 1]
    for _ in range(times):
        r = [1]
        base = x
        e = p
        while e:
            if e & 1:
                r = _pp_mulmod(r, base, m, p)
            base = _pp_mulmod(base, base, m, p)
            e >>= 1
        x = r
    return x


def _prime_poly_irreducible(m: tuple[int, ...], p: int) -> bool:
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if m[0] == 0:
        return False
    xq = _pp_frobenius_power(m, p, n)
    if _pp_mod([0, 1], m, p) != xq:
        return False
    for r in range(2, n + 1):
        if n % r == 0 and is_prime(r):
            h = _pp_frobenius_power(m, p, n // r)
            h = h + [0] * max(0, 2 - len(h))
            h[1] = (h[1] - 1) % p
            while h and h[-1] == 0:
                h.pop()
            if not h or not _pp_gcd_is_one(m, h, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k`` over GF(p) in canonical order."""
    for low in itertools.product(range(p), repeat=k):
        m = low + (1,)
        if _prime_poly_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_make(p: int, k: int = 1, modulus=None) -> Field:
    return Field(p, k, modulus)
