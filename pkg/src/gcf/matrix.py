"""Dense square matrices over a finite field and their similarity invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from . import poly as _p
from .factor import factor, irreducibles, is_irreducible
from .field import Field
from .poly import Poly, PolyError, compose_mod, gcd

__all__ = [
    "Matrix",
    "MatrixError",
    "ElementaryDivisors",
    "KernelDescription",
    "companion",
    "direct_sum",
    "jordan_block",
    "evaluate_poly",
    "invariant_factors",
    "elementary_divisors",
    "recombine",
    "similar",
    "kernel_description",
    "nullity_sequence",
    "span_dimension_CD",
    "rational_canonical",
    "similarity_classes",
    "rank",
    "solve",
]


class MatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# row reduction on plain lists of field elements


def _rref(F: Field, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    prime = F.k == 1
    p = F.p
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        if prime:
            rows[r] = [x * inv % p for x in rows[r]]
        else:
            rows[r] = [F.mul(x, inv) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                m = rows[i][c]
                if prime:
                    rows[i] = [(x - m * y) % p for x, y in zip(rows[i], pr)]
                else:
                    rows[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(F: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(_rref(F, [list(r) for r in rows])[1])


def solve(F: Field, columns: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """Solve ``sum_j x_j * columns[j] = rhs``; ``None`` when inconsistent."""
    m = len(rhs)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [rhs[i]] for i in range(m)]
    red, pivots = _rref(F, aug)
    if k in pivots:
        return None
    x = [0] * k
    for row, c in zip(red, pivots):
        x[c] = row[k]
    return x


def null_space(F: Field, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    red, pivots = _rref(F, [list(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------


class Matrix:
    """Immutable ``n x n`` matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MatrixError("matrix must be square")
        for r in rows:
            for x in r:
                if not 0 <= x < field.q:
                    raise MatrixError(f"entry {x} not in {field}")
        self.field = field
        self.n = n
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows) -> "Matrix":
        obj = object.__new__(cls)
        obj.field = field
        obj.n = len(rows)
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, [[0] * n for _ in range(n)])

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence[int]]) -> "Matrix":
        n = len(cols)
        return cls._raw(field, [[cols[j][i] for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("matrix expected")
        if other.field != self.field:
            raise MatrixError("matrices over different fields")
        if other.n != self.n:
            raise MatrixError("matrix sizes differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.field.add
        return Matrix._raw(
            self.field, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        sub = self.field.sub
        return Matrix._raw(
            self.field, [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def scale(self, c: int) -> "Matrix":
        mul = self.field.mul
        return Matrix._raw(self.field, [[mul(c, x) for x in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.field
        cols = list(zip(*other.rows))
        if F.k == 1:
            p = F.p
            out = [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in self.rows]
        else:
            add, mul = F.add, F.mul
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for x, y in zip(r, c):
                        if x and y:
                            acc = add(acc, mul(x, y))
                    row.append(acc)
                out.append(row)
        return Matrix._raw(F, out)

    __mul__ = __matmul__

    def apply(self, vec: Sequence[int]) -> list[int]:
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for x, y in zip(r, vec):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out.append(acc)
        return out

    def __pow__(self, e: int) -> "Matrix":
        result = Matrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, list(zip(*self.rows)))

    def trace(self) -> int:
        acc = 0
        for i in range(self.n):
            acc = self.field.add(acc, self.rows[i][i])
        return acc

    def det(self) -> int:
        F = self.field
        rows = [list(r) for r in self.rows]
        n = self.n
        det = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = F.neg(det)
            det = F.mul(det, rows[c][c])
            inv = F.inv(rows[c][c])
            for i in range(c + 1, n):
                if rows[i][c]:
                    m = F.mul(rows[i][c], inv)
                    rows[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(rows[i], rows[c])]
        return det

    def rank(self) -> int:
        return rank(self.field, self.rows)

    def nullity(self) -> int:
        return self.n - self.rank()

    def inverse(self) -> "Matrix":
        F = self.field
        n = self.n
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref(F, aug)
        if pivots[:n] != list(range(n)):
            raise MatrixError("matrix is singular")
        return Matrix._raw(F, [r[n:] for r in red])

    def null_space(self) -> list[list[int]]:
        return null_space(self.field, self.rows, self.n)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __str__(self):
        from .text import format_matrix

        return format_matrix(self)

    def __repr__(self):
        return f"Matrix({self.field}, {[list(r) for r in self.rows]})"


# ---------------------------------------------------------------------------
# constructors


def companion(f: Poly) -> Matrix:
    """Companion matrix: ones on the subdiagonal, last column ``-f_0..-f_{n-1}``."""
    if not f.is_monic() or f.degree < 1:
        raise MatrixError("companion matrix needs a monic polynomial of degree >= 1")
    F = f.field
    n = f.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = F.neg(f.coeffs[i])
    return Matrix._raw(F, rows)


def direct_sum(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise MatrixError("direct sum of no blocks")
    F = blocks[0].field
    if any(b.field != F for b in blocks):
        raise MatrixError("blocks over different fields")
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[off + i][off : off + b.n] = r
        off += b.n
    return Matrix._raw(F, rows)


def jordan_block(field: Field, a: int, size: int) -> Matrix:
    """``a`` on the diagonal, ones on the superdiagonal."""
    if size < 1:
        raise MatrixError("Jordan block size must be >= 1")
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = a
        if i + 1 < size:
            rows[i][i + 1] = 1
    return Matrix._raw(field, rows)


def evaluate_poly(g: Poly, A: Matrix) -> Matrix:
    """``g(A)`` by Horner's rule."""
    if g.field != A.field:
        raise MatrixError("polynomial and matrix over different fields")
    F = A.field
    acc = Matrix.zero(F, A.n)
    for c in reversed(g.coeffs):
        acc = acc @ A
        if c:
            rows = [list(r) for r in acc.rows]
            for i in range(A.n):
                rows[i][i] = F.add(rows[i][i], c)
            acc = Matrix._raw(F, rows)
    return acc


# ---------------------------------------------------------------------------
# similarity invariants


def _smith_diagonal(F: Field, M: list[list[list[int]]]) -> list[list[int]]:
    """Diagonal of a Smith form of a square matrix over F[X] (entries are coeff lists)."""
    n = len(M)
    divmod_, mod, add, scale = _p._divmod, _p._mod, _p._add, _p._scale
    mul = _p._mul
    neg1 = F.neg(1)
    diag = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                row = M[i]
                for j in range(t, n):
                    e = row[j]
                    if e and (best is None or len(e) < best[0]):
                        best = (len(e), i, j)
                        if len(e) == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                diag.extend([[]] * (n - t))
                return diag
            _, i, j = best
            M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
            pivot = M[t][t]
            clean = True
            for i in range(t + 1, n):
                e = M[i][t]
                if e:
                    qu, r = divmod_(F, e, pivot)
                    mq = scale(F, qu, neg1)
                    Mi, Mt = M[i], M[t]
                    for j in range(t, n):
                        if Mt[j]:
                            Mi[j] = add(F, Mi[j], mul(F, mq, Mt[j]))
                    Mi[t] = r
                    if r:
                        clean = False
            for j in range(t + 1, n):
                e = M[t][j]
                if e:
                    qu, r = divmod_(F, e, pivot)
                    mq = scale(F, qu, neg1)
                    for i in range(t, n):
                        if M[i][t]:
                            M[i][j] = add(F, M[i][j], mul(F, mq, M[i][t]))
                    M[t][j] = r
                    if r:
                        clean = False
            if not clean:
                continue
            if len(pivot) > 1:
                bad = next(
                    (i for i in range(t + 1, n) for j in range(t + 1, n) if M[i][j] and mod(F, M[i][j], pivot)),
                    None,
                )
                if bad is not None:
                    M[t] = [add(F, x, y) for x, y in zip(M[t], M[bad])]
                    continue
            diag.append(pivot)
            break
    return diag


def invariant_factors(A: Matrix) -> tuple[Poly, ...]:
    """Invariant factors ``q_1 | ... | q_r`` (nonconstant, monic) via Smith form of ``XI - A``."""
    F = A.field
    n = A.n
    M = [[[F.neg(x)] if x else [] for x in row] for row in A.rows]
    for i in range(n):
        M[i][i] = _p._trim([F.neg(A.rows[i][i]), 1])
    diag = _smith_diagonal(F, M)
    out = [Poly._raw(F, _p._monic(F, d)) for d in diag if len(d) > 1]
    out.sort(key=Poly.sort_key)
    return tuple(out)


def check_chain(invs: Sequence[Poly]) -> None:
    for q in invs:
        if not q.is_monic() or q.degree < 1:
            raise MatrixError("invariant factors must be monic and nonconstant")
    for a, b in zip(invs, invs[1:]):
        if not a.divides(b):
            raise MatrixError(f"{a} does not divide {b}")


@dataclass(frozen=True)
class KernelDescription:
    z: Poly
    d: int
    h: Poly
    basis: tuple[tuple[int, ...], ...]


class ElementaryDivisors:
    """Similarity type: monic irreducible ``p`` -> ascending exponent tuple."""

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[Poly, Iterable[int]] | Iterable[tuple[Poly, int]] = ()):
        acc: dict[Poly, list[int]] = {}
        items = parts.items() if isinstance(parts, Mapping) else None
        if items is not None:
            for p, exps in items:
                acc.setdefault(p, []).extend(int(e) for e in exps)
        else:
            for p, e in parts:
                acc.setdefault(p, []).append(int(e))
        for p, exps in acc.items():
            if any(e < 1 for e in exps):
                raise MatrixError("exponents must be >= 1")
            if not p.is_monic() or p.degree < 1:
                raise MatrixError(f"{p} is not a monic nonconstant polynomial")
        self.parts = {
            p: tuple(sorted(acc[p])) for p in sorted(acc, key=Poly.sort_key) if acc[p]
        }

    @property
    def field(self) -> Field | None:
        return next(iter(self.parts)).field if self.parts else None

    @property
    def size(self) -> int:
        return sum(p.degree * sum(exps) for p, exps in self.parts.items())

    def primes(self) -> list[Poly]:
        return list(self.parts)

    def divisors(self) -> list[tuple[Poly, int]]:
        """``(p, e)`` pairs, primes in canonical order, exponents descending."""
        return [(p, e) for p, exps in self.parts.items() for e in reversed(exps)]

    def count(self) -> int:
        return sum(len(e) for e in self.parts.values())

    def merge(self, other: "ElementaryDivisors") -> "ElementaryDivisors":
        return ElementaryDivisors(self.divisors() + other.divisors())

    def is_homogeneous(self) -> bool:
        return all(len(set(e)) == 1 for e in self.parts.values())

    def is_semisimple(self) -> bool:
        return all(max(e) == 1 for e in self.parts.values())

    def all_linear(self) -> bool:
        return all(p.degree == 1 for p in self.parts)

    def nullities(self, p: Poly) -> list[int]:
        """``d_1, ..., d_{e+1}`` with ``d_i = dim V(p^i)/deg p`` (stops after the first repeat)."""
        exps = self.parts.get(p, ())
        top = max(exps, default=0)
        return [sum(min(i, e) for e in exps) for i in range(1, top + 2)]

    def __eq__(self, other):
        if not isinstance(other, ElementaryDivisors):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(tuple(self.parts.items()))

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        out = []
        for p, e in self.divisors():
            s = str(p)
            if len([c for c in p.coeffs if c]) > 1:
                s = f"({s})"
            out.append(s if e == 1 else f"{s}^{e}")
        return ", ".join(out)

    def __repr__(self):
        return f"ElementaryDivisors({str(self)!r})"


def elementary_divisors(invs: Sequence[Poly]) -> ElementaryDivisors:
    pairs = []
    for q in invs:
        for p, e in factor(q).factors:
            pairs.append((p, e))
    return ElementaryDivisors(pairs)


def recombine(ed: ElementaryDivisors) -> tuple[Poly, ...]:
    """Rebuild the invariant factor chain from elementary divisors."""
    if not ed:
        return ()
    F = ed.field
    r = max(len(e) for e in ed.parts.values())
    invs = []
    for k in range(r):
        q = Poly.one(F)
        for p, exps in ed.parts.items():
            desc = sorted(exps, reverse=True)
            if k < len(desc):
                q = q * p ** desc[k]
        invs.append(q)
    return tuple(reversed(invs))


def similar(A: Matrix, B: Matrix) -> bool:
    A._check(B)
    return invariant_factors(A) == invariant_factors(B)


def rational_canonical(ed: ElementaryDivisors) -> Matrix:
    """Direct sum of companion matrices of the elementary divisors."""
    return direct_sum([companion(p**e) for p, e in ed.divisors()])


def kernel_description(y: Poly, g: Poly, f: Poly) -> KernelDescription:
    """Null space of ``y(g(C_f))`` read off from ``gcd(y(g(X)), f)``."""
    if not f.is_monic() or f.degree < 1:
        raise MatrixError("f must be monic of degree >= 1")
    n = f.degree
    yg = compose_mod(y, g, f)
    z = gcd(yg, f)
    h = f // z
    d = z.degree
    basis = tuple(tuple((Poly.monomial(f.field, 1, j) * h).padded(n)) for j in range(d))
    return KernelDescription(z, d, h, basis)


def nullity_sequence(A: Matrix, p: Poly) -> list[int]:
    """``d_i = dim ker p(A)^i / deg p`` for ``i = 1, 2, ...`` through the first repeat."""
    if not is_irreducible(p):
        raise MatrixError(f"{p} is not irreducible")
    P = evaluate_poly(p, A)
    out: list[int] = []
    power = P
    while True:
        k = A.n - power.rank()
        if k % p.degree:
            raise AssertionError("nullity not divisible by deg p")
        out.append(k // p.degree)
        if len(out) >= 2 and out[-1] == out[-2]:
            return out
        power = power @ P


def span_dimension_CD(f: Poly, g: Poly) -> int:
    """Dimension of the span of ``C^i D^j`` (``0 <= i, j < n``), ``C = C_f``, ``D = C_g``."""
    if f.degree != g.degree:
        raise MatrixError("f and g must have the same degree")
    C, D = companion(f), companion(g)
    n = f.degree
    cpow = [Matrix.identity(f.field, n)]
    dpow = [Matrix.identity(f.field, n)]
    for _ in range(n - 1):
        cpow.append(cpow[-1] @ C)
        dpow.append(dpow[-1] @ D)
    vecs = []
    for Ci in cpow:
        for Dj in dpow:
            vecs.append([x for row in (Ci @ Dj).rows for x in row])
    return rank(f.field, vecs)


# ---------------------------------------------------------------------------


def _partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def similarity_classes(field: Field, n: int) -> Iterator[ElementaryDivisors]:
    """Every similarity class of ``M_n(field)``, as elementary divisors."""
    primes = [p for d in range(1, n + 1) for p in irreducibles(field, d)]

    def rec(idx: int, remaining: int, acc: list[tuple[Poly, int]]):
        if remaining == 0:
            yield ElementaryDivisors(acc)
            return
        if idx == len(primes):
            return
        p = primes[idx]
        yield from rec(idx + 1, remaining, acc)
        d = p.degree
        for total in range(1, remaining // d + 1):
            for lam in _partitions(total):
                yield from rec(idx + 1, remaining - total * d, acc + [(p, e) for e in lam])

    yield from rec(0, n, [])
