"""Deciding whether a matrix is similar to some ``g(C_f)``.

A verdict is ``Yes`` with a witness ``(f, g)``, ``No`` with an exhaustion
record, or ``Unknown`` when the pair budget ran out.  Constructive strategies
are tried first:

* cyclic matrices (``f`` the characteristic polynomial, ``g = X``);
* diagonalizable matrices and the one-square-block variant;
* homogeneous matrices, through a commuting cyclic matrix;
* split matrices with no more Jordan blocks than field elements;
* distinct affine conjugates of the primes glued by CRT;

and brute force over all ``(f, g)`` closes the chain.  Every witness is
checked with a Smith-form similarity test before it is returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .factor import count_irreducibles, factor, irreducibles
from .field import Field
from .kernels import BACKEND, make_scanner
from .matrix import (
    ElementaryDivisors,
    Matrix,
    MatrixError,
    companion,
    direct_sum,
    elementary_divisors,
    evaluate_poly,
    invariant_factors,
    jordan_block,
    rational_canonical,
    recombine,
    similar,
    solve,
)
from .poly import Poly, compose_mod, crt, monic_polys, polys_below, product, xgcd
from .simtype import simtype_of_gCf

__all__ = [
    "PolytypeError",
    "OmegaElement",
    "omega_act",
    "omega_compose",
    "omega_orbit",
    "stabilizers",
    "pick_fresh_conjugate",
    "EllTable",
    "ell_table",
    "PolytypeVerdict",
    "verify_witness",
    "witness_cyclic",
    "witness_via_main",
    "witness_diagonalizable",
    "witness_xr2",
    "witness_jordan",
    "build_commuting_cyclic",
    "witness_homogeneous",
    "power_lift",
    "shift_witness",
    "brute_force",
    "polytype_decide",
    "counterexample_matrix",
    "NilpotentProfile",
    "nilpotent_decide",
    "format_certificate",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 2**24

Witness = tuple[Poly, Poly]


class PolytypeError(RuntimeError):
    """Internal inconsistency: a construction that should work did not."""


# ---------------------------------------------------------------------------
# Affine group acting on polynomials


@dataclass(frozen=True)
class OmegaElement:
    """The substitution ``X -> aX + b``; as a matrix ``[[a, b], [0, 1]]``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("a must be nonzero")


def omega_act(M: OmegaElement, f: Poly) -> Poly:
    """``a^(-m) f(aX + b)`` with ``m = deg f``; zero maps to zero."""
    if f.is_zero():
        return f
    F = f.field
    lin = Poly(F, [M.b, M.a])
    return f.compose(lin).scale(F.inv(F.pow(M.a, f.degree)))


def omega_compose(M: OmegaElement, N: OmegaElement, F: Field) -> OmegaElement:
    """Element acting as ``N`` followed by ``M``.

    The action is on the right, so this is the matrix product ``N M``.
    """
    return OmegaElement(F.mul(N.a, M.a), F.add(F.mul(N.a, M.b), N.b))


def stabilizers(f: Poly) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(S_f, T_f)``: translations and scalings fixing ``f``, in element order."""
    F = f.field
    S = tuple(b for b in F.elements() if omega_act(OmegaElement(1, b), f) == f)
    T = tuple(a for a in F.nonzero() if omega_act(OmegaElement(a, 0), f) == f)
    return S, T


def omega_orbit(p: Poly) -> frozenset[Poly]:
    F = p.field
    return frozenset(
        omega_act(OmegaElement(a, b), p) for a in F.nonzero() for b in F.elements()
    )


def pick_fresh_conjugate(p: Poly, used: Iterable[Poly]) -> tuple[Poly, OmegaElement] | None:
    """First conjugate of ``p`` outside ``used`` and the element producing it.

    Scans translations when ``S_p`` is trivial, otherwise scalings.
    Returns ``None`` when that orbit is exhausted.
    """
    used = set(used)
    S, T = stabilizers(p)
    if len(S) == 1:
        moves = (OmegaElement(1, b) for b in p.field.elements())
    elif len(T) == 1:
        moves = (OmegaElement(a, 0) for a in p.field.nonzero())
    else:
        raise PolytypeError(f"both stabilizers of {p} are nontrivial")
    for M in moves:
        r = omega_act(M, p)
        if r not in used:
            return r, M
    return None


@dataclass(frozen=True)
class EllTable:
    """Per prime ``p``: total count of divisors whose prime is an affine conjugate of ``p``."""

    ell: Mapping[Poly, int]
    orbit: Mapping[Poly, frozenset[Poly]]


def ell_table(ed: ElementaryDivisors) -> EllTable:
    ell: dict[Poly, int] = {}
    orbits: dict[Poly, frozenset[Poly]] = {}
    for p in ed.primes():
        orb = omega_orbit(p)
        orbits[p] = orb
        ell[p] = sum(len(exps) for r, exps in ed.parts.items() if r in orb)
    return EllTable(ell, orbits)


# ---------------------------------------------------------------------------
# Verdicts and verification


@dataclass(frozen=True)
class PolytypeVerdict:
    status: str  # "Yes" | "No" | "Unknown"
    witness: Witness | None
    strategy: str
    search_stats: dict = dc_field(default_factory=dict)

    def summary(self) -> str:
        if self.status == "Yes":
            f, g = self.witness
            return f"Yes via {self.strategy}\nf = {f}\ng = {g}"
        if self.status == "No" and "examined" in self.search_stats:
            return f"No (exhausted {self.search_stats['examined']} pairs)"
        if self.status == "No":
            return f"No ({self.strategy})"
        return f"Unknown (budget {self.search_stats.get('budget')} exhausted)"


def format_certificate(stats: Mapping) -> str:
    """Flat ``key=value`` lines."""
    return "".join(f"{k}={v}\n" for k, v in stats.items())


def verify_witness(A: Matrix, f: Poly, g: Poly) -> bool:
    """``A ~ g(C_f)`` by comparing Smith-form invariant factors."""
    if not f.is_monic() or f.degree != A.n:
        return False
    return similar(A, evaluate_poly(g % f, companion(f)))


def _checked(ed: ElementaryDivisors, w: Witness | None, label: str) -> Witness | None:
    if w is None:
        return None
    f, g = w
    g = g % f
    if not verify_witness(rational_canonical(ed), f, g):
        raise PolytypeError(f"{label} produced an invalid witness f={f}, g={g}")
    return f, g


def _X(F: Field) -> Poly:
    return Poly.x(F)


def _root(p: Poly) -> int:
    return p.field.neg(p[0])


def _assemble(parts: Sequence[tuple[Poly, Poly]]) -> Witness:
    """CRT-glue ``(f_i, g_i)`` with pairwise coprime ``f_i``."""
    F = parts[0][0].field
    f = product((fi for fi, _ in parts), F)
    g = crt([(gi % fi, fi) for fi, gi in parts])
    return f, g


# ---------------------------------------------------------------------------
# Constructive strategies; each takes the similarity type and returns a
# verified witness or None when its shape does not apply.


def witness_cyclic(ed: ElementaryDivisors) -> Witness | None:
    invs = recombine(ed)
    if len(invs) != 1:
        return None
    return _checked(ed, (invs[0], _X(invs[0].field)), "cyclic")


def witness_diagonalizable(ed: ElementaryDivisors) -> Witness | None:
    if not ed or not (ed.all_linear() and ed.is_semisimple()):
        return None
    F = ed.field
    parts = []
    for p, exps in ed.parts.items():
        a = _root(p)
        parts.append((p ** len(exps), Poly.const(F, a)))
    return _checked(ed, _assemble(parts), "diagonalizable")


def witness_xr2(ed: ElementaryDivisors) -> Witness | None:
    """One ``(X - a)^2`` block and otherwise linear divisors."""
    if not ed or not ed.all_linear():
        return None
    squares = [(p, e) for p, e in ed.divisors() if e > 1]
    if len(squares) != 1 or squares[0][1] != 2:
        return None
    F = ed.field
    p1 = squares[0][0]
    a1 = _root(p1)
    m = len(ed.parts[p1]) - 1
    X = _X(F)
    parts = [(X ** (m + 2), X ** (m + 1) + Poly.const(F, a1))]
    others = [(p, exps) for p, exps in ed.parts.items() if p != p1]
    shifts = list(F.nonzero())
    if len(others) > len(shifts):
        return None
    for (p, exps), c in zip(others, shifts):
        parts.append((Poly.linear(F, c) ** len(exps), Poly.const(F, _root(p))))
    return _checked(ed, _assemble(parts), "xr2")


def _flat(M: Matrix) -> list[int]:
    return [x for row in M.rows for x in row]


def _solve_in_powers(B: Matrix, target: Matrix) -> Poly | None:
    """``g`` of degree < n with ``g(B) = target``, if one exists."""
    F = B.field
    n = B.n
    cols = []
    P = Matrix.identity(F, n)
    for _ in range(n):
        cols.append(_flat(P))
        P = P @ B
    coeffs = solve(F, cols, _flat(target))
    return None if coeffs is None else Poly(F, coeffs)


def witness_jordan(ed: ElementaryDivisors) -> Witness | None:
    """Split matrices with at most ``|F|`` Jordan blocks."""
    if not ed or not ed.all_linear():
        return None
    F = ed.field
    blocks = [(_root(p), e) for p, e in ed.divisors()]
    if len(blocks) > F.q:
        return None
    D = direct_sum([jordan_block(F, b, m) for b, (_, m) in zip(F.elements(), blocks)])
    target = direct_sum([jordan_block(F, a, m) for a, m in blocks])
    g = _solve_in_powers(D, target)
    if g is None:
        raise PolytypeError("target does not lie in F[D]")
    f = product((Poly.linear(F, b) ** m for b, (_, m) in zip(F.elements(), blocks)), F)
    return _checked(ed, (f, g), "jordan")


def build_commuting_cyclic(p: Poly, i: int, k: int) -> Matrix:
    """``k x k`` block matrix with ``C_{p^i}`` on the diagonal and first superdiagonal.

    It commutes with ``C_{p^i}`` repeated ``k`` times.  For ``i = 1`` it is
    cyclic with minimal polynomial ``p^k``; for ``i > 1`` and ``k > 1`` it is
    not, since ``f(B) e`` picks up ``X f'(X)`` rather than a unit multiple
    of ``e`` (see ``power_lift`` for the route used then).
    """
    if k < 1 or i < 1:
        raise ValueError("i and k must be positive")
    f = p**i
    if f[0] == 0:
        raise ValueError("constant term must be nonzero")
    F = p.field
    C = companion(f)
    m = f.degree
    Z = Matrix.zero(F, m)
    rows = []
    for bi in range(k):
        blocks = [C if bj in (bi, bi + 1) else Z for bj in range(k)]
        for r in range(m):
            rows.append([x for blk in blocks for x in blk.rows[r]])
    return Matrix(F, rows)


def power_lift(p: Poly, i: int, k: int) -> Poly:
    """``h`` with ``h(C_{p^(ik)})`` similar to ``C_{p^i}`` repeated ``k`` times.

    ``h = H + p^k`` where ``H = X mod p`` is the Newton lift of a root of
    ``p`` modulo ``p^(ik)``.  Then ``p(h)`` is exactly divisible by ``p^k``
    (modulo ``p^(ik)``), which gives ``k`` elementary divisors ``p^i``.  For
    ``p = X`` this is ``h = X^k``.
    """
    F = p.field
    m = p ** (i * k)
    H = Poly.x(F) % m
    dp = p.derivative()
    while True:
        val = compose_mod(p, H, m)
        if val.is_zero():
            break
        _, s, _ = xgcd(compose_mod(dp, H, m), m)
        H = (H - val * s) % m
    return (H + p**k) % m


def witness_homogeneous(ed: ElementaryDivisors) -> Witness | None:
    """Cyclic ``B`` commuting with a conjugate of ``A``, then ``g`` from ``A' = g(B)``.

    For ``p != X`` the block matrix of ``build_commuting_cyclic`` is used when
    it is cyclic; it is not once ``p^i`` has repeated factors, and then
    ``B = C_{p^(ik)}`` with ``A' = power_lift(p, i, k)(B)``.
    """
    if not ed or not ed.is_homogeneous():
        return None
    F = ed.field
    X = _X(F)
    Bs, As, fs = [], [], []
    for p, exps in ed.parts.items():
        i, k = exps[0], len(exps)
        fp = p ** (i * k)
        fs.append(fp)
        if p != X:
            B = build_commuting_cyclic(p, i, k)
            if invariant_factors(B) == (fp,):
                Bs.append(B)
                As.append(direct_sum([companion(p**i)] * k))
                continue
        C = companion(fp)
        Bs.append(C)
        As.append(evaluate_poly(power_lift(p, i, k), C))
    B = direct_sum(Bs)
    g = _solve_in_powers(B, direct_sum(As))
    if g is None:
        raise PolytypeError("commuting matrix is not a polynomial in B")
    return _checked(ed, (product(fs, F), g), "homogeneous")


def witness_via_main(ed: ElementaryDivisors) -> Witness | None:
    """Distinct affine conjugates ``r_i`` of the primes, ``f_i = r_i^e_i``, linear ``g_i``."""
    if not ed:
        return None
    F = ed.field
    table = ell_table(ed)
    for p in ed.primes():
        S, T = stabilizers(p)
        if len(S) == 1:
            room = F.q
        elif len(T) == 1:
            room = F.q - 1
        else:
            raise PolytypeError(f"both stabilizers of {p} are nontrivial")
        if table.ell[p] > room:
            return None
    used: list[Poly] = []
    parts = []
    for p, e in ed.divisors():
        picked = pick_fresh_conjugate(p, used)
        if picked is None:
            raise PolytypeError(f"no fresh conjugate of {p} although the counts allow one")
        r, M = picked
        used.append(r)
        parts.append((r**e, Poly(F, [M.b, M.a])))
    return _checked(ed, _assemble(parts), "main")


def shift_witness(w: Witness, a: int) -> Witness:
    """Witness for ``A + aI`` from a witness for ``A``."""
    f, g = w
    return f, g + Poly.const(f.field, a)


# ---------------------------------------------------------------------------
# Brute force


def _prime_profile(ed: ElementaryDivisors) -> list[tuple[int, int, int, int]]:
    """Per prime: (deg p, total exponent, max exponent, number of divisors)."""
    return [(p.degree, sum(ex), max(ex), len(ex)) for p, ex in ed.parts.items()]


def _f_feasible(fac: Sequence[tuple[int, int]], profile: Sequence[tuple[int, int, int, int]]) -> bool:
    """Can the factors ``(deg r, mult)`` of ``f`` be shared out among the primes?

    A factor ``r^u`` feeds the prime ``p`` equal to the minimal polynomial of
    ``g`` mod ``r``, so ``deg p | deg r``; it contributes dimension
    ``u deg r``, at least ``deg r / deg p`` divisors and exponents at most
    ``u``.  Each prime needs its exact dimension, room for its divisor count
    and one factor with ``u`` at least its top exponent.
    """
    dims = [dp * m for dp, m, _, _ in profile]
    slack = [d1 for _, _, _, d1 in profile]
    need = [e for _, _, e, _ in profile]
    top = [0] * len(profile)
    fac = sorted(fac, key=lambda t: (-t[0] * t[1], -t[0]))

    def rec(idx: int) -> bool:
        if idx == len(fac):
            return all(d == 0 for d in dims) and all(t >= e for t, e in zip(top, need))
        dr, u = fac[idx]
        for j, (dp, _, _, _) in enumerate(profile):
            if dr % dp or dims[j] < u * dr or slack[j] < dr // dp:
                continue
            dims[j] -= u * dr
            slack[j] -= dr // dp
            old = top[j]
            top[j] = max(old, u)
            ok = rec(idx + 1)
            dims[j] += u * dr
            slack[j] += dr // dp
            top[j] = old
            if ok:
                return True
        return False

    return rec(0)


def brute_force(
    A: Matrix,
    budget: int = DEFAULT_BUDGET,
    *,
    prune: bool = True,
    backend: str | None = None,
) -> PolytypeVerdict:
    """Scan monic ``f`` of degree ``n`` and ``g`` of degree < ``n`` in canonical order.

    Pruned ``f`` count all of their ``q^n`` pairs as examined.  A ``No``
    means every pair was examined or pruned.
    """
    t0 = time.perf_counter()
    F = A.field
    n = A.n
    q = F.q
    ed = elementary_divisors(invariant_factors(A))
    primes = ed.primes()
    targets = [[p.degree * d for d in ed.nullities(p)] for p in primes]
    gs = [g.coeffs for g in polys_below(F, n)]
    per_f = len(gs)
    scanner = make_scanner(q, F.tables, gs, [p.coeffs for p in primes], targets, backend)
    profile = _prime_profile(ed)
    total = per_f * q**n
    examined = pruned = scanned = 0
    stats = {
        "field": str(F),
        "n": n,
        "total": total,
        "examined": 0,
        "pruned": 0,
        "scanned": 0,
        "budget": budget,
        "backend": scanner.backend,
        "elapsed": 0.0,
    }

    def done(status, witness=None):
        stats.update(examined=examined, pruned=pruned, scanned=scanned)
        stats["elapsed"] = round(time.perf_counter() - t0, 6)
        return PolytypeVerdict(status, witness, "brute-force", stats)

    for f in monic_polys(F, n):
        if examined >= budget:
            return done("Unknown")
        if prune:
            fac = [(r.degree, u) for r, u in factor(f).factors]
            if not _f_feasible(fac, profile):
                examined += per_f
                pruned += per_f
                continue
        stop = min(per_f, budget - examined)
        idx = scanner.first_match(f.coeffs, 0, stop)
        if idx >= 0:
            examined += idx + 1
            scanned += idx + 1
            g = Poly(F, gs[idx])
            if simtype_of_gCf(f, g).eldivs != ed or not verify_witness(A, f, g):
                raise PolytypeError(f"kernel hit f={f}, g={g} does not verify")
            return done("Yes", (f, g))
        examined += stop
        scanned += stop
    if examined < total:
        return done("Unknown")
    return done("No")


# ---------------------------------------------------------------------------
# Orchestration

_STRATEGIES = (
    ("cyclic", witness_cyclic),
    ("diagonalizable", witness_diagonalizable),
    ("xr2", witness_xr2),
    ("homogeneous", witness_homogeneous),
    ("jordan", witness_jordan),
    ("main", witness_via_main),
)


def polytype_decide(A: Matrix, budget: int = DEFAULT_BUDGET, *, backend: str | None = None) -> PolytypeVerdict:
    ed = elementary_divisors(invariant_factors(A))
    for label, strategy in _STRATEGIES:
        w = strategy(ed)
        if w is not None:
            if not verify_witness(A, *w):
                raise PolytypeError(f"{label} witness does not verify against A")
            return PolytypeVerdict("Yes", w, label, {})
    return brute_force(A, budget, backend=backend)


def counterexample_matrix(F: Field) -> Matrix:
    """``J_3(0) + J_1(0) + J_1(a_2) + ... + J_1(a_q)`` over the elements of ``F`` in order."""
    blocks = [jordan_block(F, 0, 3)] + [jordan_block(F, a, 1) for a in F.elements()]
    return direct_sum(blocks)


# ---------------------------------------------------------------------------
# Nilpotent matrices


@dataclass(frozen=True)
class NilpotentProfile:
    """Nilpotent similarity class: ``c[i]`` Jordan blocks of size ``i``."""

    c: Mapping[int, int]

    def __post_init__(self):
        clean = {int(i): int(v) for i, v in self.c.items() if v}
        if not clean or any(i < 1 or v < 0 for i, v in clean.items()):
            raise ValueError("profile needs positive sizes and counts")
        object.__setattr__(self, "c", dict(sorted(clean.items())))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "NilpotentProfile":
        c: dict[int, int] = {}
        for s in sizes:
            c[s] = c.get(s, 0) + 1
        return cls(c)

    @classmethod
    def from_nullities(cls, s: Sequence[int]) -> "NilpotentProfile":
        """Inverse of ``nullities``: ``c(j) = 2 s_j - s_{j-1} - s_{j+1}``."""
        if any(b <= a for a, b in zip(s, s[1:])) or not s or s[0] < 1:
            raise ValueError("nullity sequence must be strictly increasing and positive")
        full = [0, *s, s[-1]]
        return cls({j: 2 * full[j] - full[j - 1] - full[j + 1] for j in range(1, len(s) + 1)})

    @property
    def n(self) -> int:
        return sum(i * v for i, v in self.c.items())

    @property
    def t(self) -> int:
        return max(self.c)

    def r(self, i: int) -> int:
        v = self.c[i]
        return sum(1 for x in self.c.values() if x == v)

    def nullities(self) -> list[int]:
        """``s_i = dim ker A^i`` for ``i = 1 .. t``."""
        return [sum(min(i, j) * v for j, v in self.c.items()) for i in range(1, self.t + 1)]

    def sizes(self) -> list[int]:
        return [i for i, v in self.c.items() for _ in range(v)]

    def matrix(self, F: Field) -> Matrix:
        return direct_sum([jordan_block(F, 0, i) for i in self.sizes()])

    def eldivs(self, F: Field) -> ElementaryDivisors:
        return ElementaryDivisors([(_X(F), i) for i in self.sizes()])

    def __str__(self):
        return "|".join(str(i) if v == 1 else f"{i}^{v}" for i, v in self.c.items())


def _diophantine(profile: NilpotentProfile, F: Field, stats: dict):
    """Types ``(d, a, b)`` with ``sum min(i b, a) d = s_i`` for all ``i``, or None.

    Each type stands for a distinct irreducible ``r`` of degree ``d`` with
    ``r^a || f`` and ``r^b || g``; types are chosen as a nondecreasing
    sequence and at most ``N(d)`` types share degree ``d``.
    """
    s = profile.nullities()
    t, n = len(s), profile.n
    avail = {d: count_irreducibles(F, d) for d in range(1, n + 1)}
    types = [(d, a, b) for d in range(1, n + 1) for a in range(1, n // d + 1) for b in range(1, a + 1)]

    def contrib(tp):
        d, a, b = tp
        return [min(i * b, a) * d for i in range(1, t + 1)]

    contribs = [contrib(tp) for tp in types]

    def rec(start: int, acc: list[int], used: dict[int, int], chosen: list):
        stats["nodes"] += 1
        if acc == s:
            return list(chosen)
        for j in range(start, len(types)):
            d = types[j][0]
            if used.get(d, 0) >= avail[d]:
                continue
            new = [x + y for x, y in zip(acc, contribs[j])]
            if any(x > y for x, y in zip(new, s)):
                continue
            used[d] = used.get(d, 0) + 1
            chosen.append(types[j])
            hit = rec(j, new, used, chosen)
            chosen.pop()
            used[d] -= 1
            if hit is not None:
                return hit
        return None

    return rec(0, [0] * t, {}, [])


def _instantiate(types: Sequence[tuple[int, int, int]], F: Field) -> Witness:
    pools: dict[int, Iterable[Poly]] = {}
    f = g = Poly.one(F)
    for d, a, b in types:
        if d not in pools:
            pools[d] = irreducibles(F, d)
        r = next(pools[d])
        f = f * r**a
        g = g * r**b
    return f, g


def nilpotent_decide(profile: NilpotentProfile, F: Field) -> PolytypeVerdict:
    """Single block size, then distinct irreducibles of degree ``c(i)``, then the exact search."""
    ed = profile.eldivs(F)
    X = _X(F)
    if len(profile.c) == 1:
        (i, c), = profile.c.items()
        w = _checked(ed, (X ** (c * i), X**c), "single-part")
        return PolytypeVerdict("Yes", w, "single-part", {})
    if all(count_irreducibles(F, v) >= profile.r(i) for i, v in profile.c.items()):
        pools: dict[int, Iterable[Poly]] = {}
        f = g = Poly.one(F)
        for i, v in profile.c.items():
            if v not in pools:
                pools[v] = irreducibles(F, v)
            qi = next(pools[v])
            f = f * qi**i
            g = g * qi
        w = _checked(ed, (f, g), "irsim")
        return PolytypeVerdict("Yes", w, "irsim", {})
    stats = {"nodes": 0}
    types = _diophantine(profile, F, stats)
    if types is None:
        return PolytypeVerdict("No", None, "diophantine", stats)
    stats["types"] = [list(tp) for tp in types]
    w = _checked(ed, _instantiate(types, F), "diophantine")
    return PolytypeVerdict("Yes", w, "diophantine", stats)
