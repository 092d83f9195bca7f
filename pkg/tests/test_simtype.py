import random

import pytest

from gcf.factor import factor, is_irreducible
from gcf.matrix import (
    ElementaryDivisors,
    Matrix,
    MatrixError,
    companion,
    direct_sum,
    elementary_divisors,
    evaluate_poly,
    invariant_factors,
)
from gcf.poly import Poly, PolyError, monic_polys, polys_below
from gcf.simtype import (
    csd_report,
    d_sequence,
    eldiv_of_gA,
    element_data,
    inflate,
    min_poly_mod,
    simtype_of_gCf,
)

from helpers import F2, F3, F4, F5, P, rand_below, rand_poly


def oracle(f: Poly, g: Poly) -> ElementaryDivisors:
    return elementary_divisors(invariant_factors(evaluate_poly(g, companion(f))))


def test_min_poly_mod_examples():
    assert min_poly_mod(P(F2, "X^2+X"), P(F2, "X^4+X+1")) == P(F2, "X^2+X+1")
    r = P(F3, "X^2+1")
    assert min_poly_mod(P(F3, "X"), r) == r
    assert min_poly_mod(P(F2, "X^2+X"), P(F2, "X^2+X+1")) == P(F2, "X+1")
    with pytest.raises(PolyError):
        min_poly_mod(P(F2, "X"), P(F2, "X^2+1"))


def test_min_poly_mod_annihilates_and_is_irreducible():
    rng = random.Random(1)
    for F in (F2, F3, F4):
        for _ in range(60):
            r = factor(rand_poly(F, rng.randrange(1, 7), rng, True)).factors[0][0]
            g = rand_below(F, 6, rng)
            p = min_poly_mod(g, r)
            assert is_irreducible(p) and p.degree <= r.degree and p.degree >= 1
            assert (p.compose(g) % r).is_zero()


def test_simtype_examples():
    st = simtype_of_gCf(P(F2, "X^4"), P(F2, "X^3+1"))
    assert st.eldivs == ElementaryDivisors({P(F2, "X+1"): [1, 1, 2]})
    assert st.primes[0].d == (3, 4, 4) and st.primes[0].b == (2, 1)
    f = P(F3, "X^5+X^4+2*X+1")
    assert simtype_of_gCf(f, P(F3, "X")).eldivs == elementary_divisors([f])
    st = simtype_of_gCf(P(F2, "X^4+X+1"), P(F2, "X^2+X"))
    assert st.eldivs == ElementaryDivisors({P(F2, "X^2+X+1"): [1, 1]})
    with pytest.raises(PolyError):
        simtype_of_gCf(P(F3, "2*X^2+1"), P(F3, "X"))


def test_oracle_equivalence_gf2_exhaustive_small():
    for n in range(1, 5):
        for f in monic_polys(F2, n):
            for g in polys_below(F2, n):
                assert simtype_of_gCf(f, g).eldivs == oracle(f, g)


def test_degree_conservation_and_monotone_d():
    rng = random.Random(2)
    for F in (F2, F3, F4, F5):
        for _ in range(80):
            f = rand_poly(F, rng.randrange(1, 8), rng, True)
            st = simtype_of_gCf(f, rand_below(F, 8, rng))
            total = 0
            for pd in st.primes:
                assert list(pd.d) == sorted(pd.d) and pd.d[-1] == pd.d[-2]
                assert all(b >= 0 for b in pd.b)
                total += pd.p.degree * sum((i + 1) * b for i, b in enumerate(pd.b))
            assert total == f.degree == st.eldivs.size


def test_pat_shortcut_transparency():
    rng = random.Random(3)
    for k in range(1000):
        F = (F2, F3, F4, F5)[k % 4]
        f = rand_poly(F, rng.randrange(1, 7), rng, True)
        g = rand_below(F, 7, rng)
        for r, _ in factor(f).factors:
            p = min_poly_mod(g, r)
            assert d_sequence(p, g, f) == d_sequence(p, g, f, use_pat=False)


def test_eldiv_of_gA_examples():
    f = P(F3, "X^3+X+2")
    g = P(F3, "X^2+2")
    assert eldiv_of_gA([f], g) == simtype_of_gCf(f, g).eldivs
    invs = [P(F2, "X+1"), P(F2, "X^2+X")]
    assert eldiv_of_gA(invs, P(F2, "X^2")) == ElementaryDivisors({P(F2, "X"): [1], P(F2, "X+1"): [1, 1]})
    p = P(F2, "X^2+X+1")
    A = direct_sum([companion(p), companion(p)])
    assert eldiv_of_gA([p, p], P(F2, "X+1")) == elementary_divisors(invariant_factors(A + Matrix.identity(F2, 4)))
    with pytest.raises(MatrixError):
        eldiv_of_gA([P(F2, "X^2"), P(F2, "X")], P(F2, "X"))


def test_eldiv_of_gA_matches_explicit():
    rng = random.Random(4)
    for k in range(200):
        F = (F2, F3)[k % 2]
        blocks = [rand_poly(F, rng.randrange(1, 4), rng, True) for _ in range(rng.randrange(1, 3))]
        A = direct_sum([companion(b) for b in blocks])
        invs = invariant_factors(A)
        g = rand_below(F, 5, rng)
        assert eldiv_of_gA(invs, g) == elementary_divisors(invariant_factors(evaluate_poly(g, A)))


def test_inflate_examples():
    assert inflate(P(F2, "X^2+X+1"), P(F2, "X^2+X")) == P(F2, "X^4+X+1")
    assert inflate(P(F3, "X^2+1"), P(F3, "X^4")) == P(F3, "X^8+1")
    f = P(F5, "X^3+2*X+4")
    assert inflate(f, P(F5, "X")) == f
    assert inflate(P(F5, "X+1"), P(F5, "2*X")) == P(F5, "X+3")
    with pytest.raises(PolyError):
        inflate(f, P(F5, "3"))


def test_inflate_law():
    rng = random.Random(5)
    for k in range(500):
        F = (F2, F3, F5)[k % 3]
        f = rand_poly(F, rng.randrange(1, 5), rng, True)
        d = rng.randrange(1, 4)
        g = rand_poly(F, d, rng)
        got = simtype_of_gCf(inflate(f, g), g).eldivs
        want = ElementaryDivisors([(r, e) for r, e in factor(f).factors for _ in range(d)])
        assert got == want


def test_csd_report_examples():
    rep = csd_report([P(F2, "X^4")], P(F2, "X^3+1"))
    assert (rep.semisimple, rep.cyclic, rep.eigenvalues_in_F, rep.diagonalizable) == (False, False, (1,), False)
    rep = csd_report([P(F3, "X^3+2*X+1")], P(F3, "X"))
    assert rep.semisimple and rep.cyclic
    rep = csd_report([P(F2, "X^4+X+1")], P(F2, "X^2+X"))
    assert rep.semisimple and not rep.cyclic and rep.eigenvalues_in_F is None


def _squarefree(f: Poly) -> bool:
    return all(e == 1 for _, e in factor(f).factors)


def test_csd_report_against_explicit():
    rng = random.Random(6)
    for k in range(500):
        F = (F2, F3, F5)[k % 3]
        blocks = sorted((rand_poly(F, rng.randrange(1, 4), rng, True) for _ in range(rng.randrange(1, 3))), key=Poly.sort_key)
        invs = invariant_factors(direct_sum([companion(b) for b in blocks]))
        g = rand_below(F, 4, rng)
        G = evaluate_poly(g, direct_sum([companion(q) for q in invs]))
        ginvs = invariant_factors(G)
        rep = csd_report(invs, g)
        assert rep.semisimple == _squarefree(ginvs[-1])
        assert rep.cyclic == (len(ginvs) == 1)
        ed = elementary_divisors(ginvs)
        if rep.eigenvalues_in_F is not None:
            assert ed.all_linear()
            assert rep.diagonalizable == ed.is_semisimple()
        else:
            assert not ed.all_linear()


def test_element_data_examples():
    d = element_data(P(F2, "X^4+X+1"), P(F2, "X^2+X"))
    assert (d.minpoly, d.norm, d.trace) == (P(F2, "X^2+X+1"), 1, 0)
    f = P(F3, "X^3+2*X+1")
    d = element_data(f, Poly.one(F3))
    assert (d.minpoly, d.trace, d.norm, d.inverse) == (P(F3, "X+2"), 0, 1, Poly.one(F3))
    d = element_data(P(F3, "X^2+2*X+2"), P(F3, "X"))
    assert (d.minpoly, d.trace, d.norm) == (P(F3, "X^2+2*X+2"), 1, 2)
    assert element_data(f, Poly.zero(F3)).inverse is None
    with pytest.raises(PolyError):
        element_data(P(F2, "X^2+1"), P(F2, "X"))


def test_element_data_invariants():
    rng = random.Random(7)
    for F in (F2, F3, F4):
        for _ in range(40):
            f = factor(rand_poly(F, rng.randrange(2, 6), rng, True)).factors[-1][0]
            g = rand_below(F, f.degree, rng)
            d = element_data(f, g)
            assert d.rep == evaluate_poly(g, companion(f))
            assert evaluate_poly(d.minpoly, d.rep).is_zero()
            if g:
                assert (g * d.inverse) % f == Poly.one(F)
