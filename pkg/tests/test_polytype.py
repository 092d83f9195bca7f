import random

import pytest

from gcf.factor import factor, irreducibles, is_irreducible
from gcf.matrix import (
    ElementaryDivisors,
    Matrix,
    companion,
    direct_sum,
    invariant_factors,
    jordan_block,
    rational_canonical,
    similarity_classes,
)
from gcf.poly import Poly, crt, gcd, monic_polys, polys_below
from gcf.polytype import (
    NilpotentProfile,
    OmegaElement,
    PolytypeError,
    _f_feasible,
    _prime_profile,
    brute_force,
    build_commuting_cyclic,
    counterexample_matrix,
    ell_table,
    nilpotent_decide,
    omega_act,
    omega_compose,
    omega_orbit,
    pick_fresh_conjugate,
    polytype_decide,
    power_lift,
    shift_witness,
    stabilizers,
    verify_witness,
    witness_diagonalizable,
    witness_homogeneous,
    witness_jordan,
    witness_via_main,
    witness_xr2,
)
from gcf.simtype import simtype_of_gCf

from helpers import F2, F3, F4, F5, P, rand_below, rand_poly


def ED(F, spec):
    return ElementaryDivisors({P(F, k): v for k, v in spec.items()})


def assert_witness(ed, w):
    f, g = w
    assert f.is_monic() and f.degree == ed.size and g.degree < f.degree
    assert simtype_of_gCf(f, g).eldivs == ed
    assert verify_witness(rational_canonical(ed), f, g)


# -- affine group ------------------------------------------------------------


def test_omega_examples():
    f = P(F5, "X^3+2*X+1")
    assert omega_act(OmegaElement(1, 0), f) == f
    assert omega_act(OmegaElement(1, 1), P(F2, "X^2+X+1")) == P(F2, "X^2+X+1")
    assert omega_act(OmegaElement(2, 0), P(F3, "X^2+1")) == P(F3, "X^2+1")
    assert omega_act(OmegaElement(2, 1), Poly.zero(F3)).is_zero()
    with pytest.raises(ValueError):
        OmegaElement(0, 1)


def test_omega_group_law():
    rng = random.Random(1)
    for k in range(500):
        F = (F4, F5)[k % 2]
        M = OmegaElement(rng.randrange(1, F.q), rng.randrange(F.q))
        N = OmegaElement(rng.randrange(1, F.q), rng.randrange(F.q))
        f = rand_poly(F, rng.randrange(1, 5), rng, monic=True)
        MN = omega_compose(M, N, F)
        assert omega_act(M, omega_act(N, f)) == omega_act(MN, f)
        # composition agrees with the matrix product N * M of [[a, b], [0, 1]]
        na, nb = N.a, N.b
        assert (MN.a, MN.b) == (F.mul(na, M.a), F.add(F.mul(na, M.b), nb))
        g = omega_act(M, f)
        assert g.degree == f.degree and g.is_monic()
        assert is_irreducible(g) == is_irreducible(f)


def test_stabilizer_examples():
    assert stabilizers(P(F2, "X^2+X+1")) == ((0, 1), (1,))
    for F in (F2, F3, F4, F5):
        assert stabilizers(Poly.x(F)) == ((0,), tuple(F.nonzero()))
    assert stabilizers(P(F3, "X^2+1")) == ((0,), (1, 2))


@pytest.mark.parametrize("F", [F2, F3, F4], ids=str)
def test_stabilizer_dichotomy(F):
    for d in range(1, 5):
        for f in irreducibles(F, d):
            S, T = stabilizers(f)
            assert len(S) == 1 or len(T) == 1
            assert len(S) <= d


def test_pick_fresh_conjugate_examples():
    X2 = Poly.x(F2)
    assert pick_fresh_conjugate(X2, {X2})[0] == P(F2, "X+1")
    p = P(F2, "X^2+X+1")
    assert pick_fresh_conjugate(p, {p}) is None
    assert pick_fresh_conjugate(Poly.x(F3), {P(F3, s) for s in ("X", "X+1", "X+2")}) is None
    r, M = pick_fresh_conjugate(P(F3, "X^2+1"), {P(F3, "X^2+1")})
    assert omega_act(M, P(F3, "X^2+1")) == r and r in omega_orbit(P(F3, "X^2+1"))


def test_ell_table_constant_on_orbits():
    ed = ED(F3, {"X": [1], "X+1": [2], "X+2": [1, 1], "X^2+1": [1]})
    tab = ell_table(ed)
    assert tab.ell[P(F3, "X")] == tab.ell[P(F3, "X+1")] == tab.ell[P(F3, "X+2")] == 4
    assert tab.ell[P(F3, "X^2+1")] == 1


# -- constructive witnesses ----------------------------------------------------


def test_witness_via_main_examples():
    ed = ED(F2, {"X": [1], "X+1": [1]})
    assert_witness(ed, witness_via_main(ed))
    ed = ED(F2, {"X": [1, 1]})
    assert witness_via_main(ed) == (P(F2, "X^2+X"), Poly.zero(F2))
    assert witness_via_main(ED(F2, {"X^2+X+1": [1, 1, 1]})) is None


def test_witness_diagonalizable_and_xr2():
    assert witness_diagonalizable(ED(F2, {"X": [1, 1]})) is not None
    f, g = witness_diagonalizable(ED(F2, {"X": [1, 1]}))
    assert_witness(ED(F2, {"X": [1, 1]}), (f, g))
    assert witness_xr2(ED(F2, {"X": [1, 2]})) == (P(F2, "X^3"), P(F2, "X^2"))
    ed = ED(F2, {"X": [2], "X+1": [1]})
    assert_witness(ed, witness_xr2(ed))
    assert witness_xr2(ED(F2, {"X": [2, 2]})) is None
    assert witness_diagonalizable(ED(F2, {"X": [2]})) is None


def test_witness_jordan_examples():
    ed = ED(F3, {"X": [1, 2]})
    assert_witness(ed, witness_jordan(ed))
    assert witness_jordan(ED(F2, {"X": [1, 1], "X+1": [1]})) is None
    assert witness_jordan(ED(F3, {"X^2+1": [1]})) is None


def test_witness_homogeneous_examples():
    ed = ED(F2, {"X^2+X+1": [1, 1]})
    assert_witness(ed, witness_homogeneous(ed))
    assert witness_homogeneous(ED(F2, {"X": [2, 2]})) == (P(F2, "X^4"), P(F2, "X^2"))
    ed = ED(F2, {"X": [1], "X+1": [2]})
    assert_witness(ed, witness_homogeneous(ed))
    ed = ED(F2, {"X+1": [2, 2]})
    assert_witness(ed, witness_homogeneous(ed))
    assert witness_homogeneous(ED(F2, {"X": [1, 2]})) is None


def _commutes_with_blocks(B, p, i, k):
    D = direct_sum([companion(p**i)] * k)
    return B @ D == D @ B


@pytest.mark.parametrize("F,p", [(F2, "X^2+X+1"), (F3, "X^2+1"), (F5, "X+2")], ids=str)
@pytest.mark.parametrize("k", [1, 2, 3], ids=str)
def test_build_commuting_cyclic_squarefree(F, p, k):
    p = P(F, p)
    B = build_commuting_cyclic(p, 1, k)
    assert _commutes_with_blocks(B, p, 1, k)
    assert invariant_factors(B) == (p**k,)


def test_build_commuting_cyclic_k1_and_errors():
    p = P(F3, "X^2+1")
    assert build_commuting_cyclic(p, 2, 1) == companion(p**2)
    with pytest.raises(ValueError):
        build_commuting_cyclic(Poly.x(F2), 2, 2)


def test_build_commuting_cyclic_repeated_factor_not_cyclic():
    # with f = p^2 the superdiagonal C_f block leaves B non-cyclic
    p = P(F2, "X^2+X+1")
    B = build_commuting_cyclic(p, 2, 2)
    assert _commutes_with_blocks(B, p, 2, 2)
    assert invariant_factors(B) == (P(F2, "X^4+X^2+1"), P(F2, "X^4+X^2+1"))


@pytest.mark.parametrize("F,p", [(F2, "X^2+X+1"), (F3, "X^2+1"), (F2, "X"), (F3, "X+1"), (F2, "X^3+X+1")], ids=str)
@pytest.mark.parametrize("i", [1, 2, 3], ids=str)
@pytest.mark.parametrize("k", [1, 2, 3], ids=str)
def test_power_lift(F, p, i, k):
    p = P(F, p)
    h = power_lift(p, i, k)
    f = p ** (i * k)
    want = ElementaryDivisors([(p, i)] * k)
    assert simtype_of_gCf(f, h).eldivs == want


def test_shift_witness():
    w = (P(F2, "X^3"), P(F2, "X^2"))
    assert shift_witness(w, 0) == w
    assert shift_witness(w, 1) == (P(F2, "X^3"), P(F2, "X^2+1"))
    A = direct_sum([jordan_block(F2, 0, 2), jordan_block(F2, 0, 1)])
    assert verify_witness(A + Matrix.identity(F2, 3), *shift_witness(w, 1))
    w3 = (P(F3, "X^2+1"), P(F3, "X"))
    assert shift_witness(w3, 2) == (P(F3, "X^2+1"), P(F3, "X+2"))


def test_crt_assembly_law():
    rng = random.Random(2)
    for F in (F2, F3, F5):
        for _ in range(40):
            mods = []
            for _ in range(50):
                m = rand_poly(F, rng.randrange(1, 4), rng, monic=True)
                if all(gcd(m, x).is_one() for x in mods):
                    mods.append(m)
                if len(mods) == 3:
                    break
            else:
                continue
            gs = [rand_below(F, 4, rng) for _ in mods]
            g = crt([(gi % fi, fi) for gi, fi in zip(gs, mods)])
            f = mods[0] * mods[1] * mods[2]
            merged = ElementaryDivisors()
            for gi, fi in zip(gs, mods):
                merged = merged.merge(simtype_of_gCf(fi, gi).eldivs)
            assert simtype_of_gCf(f, g).eldivs == merged


# -- decision ------------------------------------------------------------------


def test_counterexample_matrix():
    A = counterexample_matrix(F2)
    assert A == direct_sum([jordan_block(F2, 0, 3), jordan_block(F2, 0, 1), jordan_block(F2, 1, 1)])
    assert invariant_factors(A) == (P(F2, "X"), P(F2, "X^4+X^3"))
    B = counterexample_matrix(F3)
    assert B.n == 6 and [B[i, i] for i in range(3, 6)] == [0, 1, 2]


def test_brute_force_counterexample_gf2():
    v = brute_force(counterexample_matrix(F2))
    assert v.status == "No" and v.witness is None
    st = v.search_stats
    assert st["examined"] == st["total"] == 1024
    assert st["pruned"] + st["scanned"] == 1024


def test_brute_force_companion_hits_by_g_equal_x():
    f = P(F3, "X^3+2*X+1")
    v = brute_force(companion(f), prune=False)
    assert v.status == "Yes" and verify_witness(companion(f), *v.witness)
    monic = [list(m.coeffs) for m in monic_polys(F3, 3)]
    pos = monic.index(list(f.coeffs)) * 27 + 3 + 1
    assert v.search_stats["examined"] <= pos


def test_brute_force_unknown_on_small_budget():
    v = brute_force(counterexample_matrix(F2), budget=10, prune=False)
    assert v.status == "Unknown" and v.search_stats["examined"] <= 10
    assert v.summary().startswith("Unknown")


def test_prune_is_sound_small():
    # every (f, g) whose g(C_f) has a given type has an f accepted by the prune
    for F, n in ((F2, 4), (F3, 3)):
        types = {}
        for ed in similarity_classes(F, n):
            types[ed] = _prime_profile(ed)
        for f in monic_polys(F, n):
            fac = [(r.degree, u) for r, u in factor(f).factors]
            for g in polys_below(F, n):
                ed = simtype_of_gCf(f, g).eldivs
                assert _f_feasible(fac, types[ed])


def test_polytype_decide_examples():
    v = polytype_decide(Matrix.identity(F3, 3))
    assert v.status == "Yes" and v.strategy == "diagonalizable"
    assert v.witness == (P(F3, "X^3"), Poly.one(F3)) or verify_witness(Matrix.identity(F3, 3), *v.witness)
    v = polytype_decide(counterexample_matrix(F2))
    assert v.status == "No" and v.strategy == "brute-force"


@pytest.mark.parametrize("F,n", [(F3, 5), (F4, 3), (F5, 4), (F2, 3)], ids=str)
def test_large_field_never_needs_brute_force(F, n):
    for ed in similarity_classes(F, n):
        v = polytype_decide(rational_canonical(ed))
        assert v.status == "Yes" and v.strategy != "brute-force", str(ed)
        assert_witness(ed, v.witness)


def test_gf2_degree5_only_two_negative_classes():
    nos = []
    for ed in similarity_classes(F2, 5):
        v = polytype_decide(rational_canonical(ed))
        if v.status == "Yes":
            assert_witness(ed, v.witness)
        else:
            assert v.status == "No"
            nos.append(ed)
    assert set(nos) == {ED(F2, {"X": [1, 3], "X+1": [1]}), ED(F2, {"X": [1], "X+1": [1, 3]})}


# -- nilpotent -----------------------------------------------------------------


def test_nilpotent_examples():
    v = nilpotent_decide(NilpotentProfile({1: 1, 2: 1}), F2)
    assert v.status == "Yes" and v.witness == (P(F2, "X^3+X"), P(F2, "X^2+X"))
    v = nilpotent_decide(NilpotentProfile({1: 1, 3: 1, 5: 1}), F2)
    assert v.status == "No" and v.strategy == "diophantine"
    v = nilpotent_decide(NilpotentProfile({3: 2}), F3)
    assert v.witness == (P(F3, "X^6"), P(F3, "X^2"))
    with pytest.raises(ValueError):
        NilpotentProfile({0: 1})


def test_nilpotent_profile_nullities():
    prof = NilpotentProfile.from_sizes([1, 3, 5])
    assert prof.nullities() == [3, 5, 7, 8, 9]
    assert str(prof) == "1|3|5" and prof.n == 9
    A = prof.matrix(F2)
    assert [(A**i).nullity() for i in range(1, 6)] == prof.nullities()


def test_nilpotent_profile_bijection():
    def partitions(n, largest=None):
        largest = n if largest is None else largest
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    for n in range(1, 11):
        seen = set()
        for parts in partitions(n):
            prof = NilpotentProfile.from_sizes(parts)
            s = prof.nullities()
            assert all(a < b for a, b in zip(s, s[1:])) and s[-1] == n
            assert NilpotentProfile.from_nullities(s) == prof
            seen.add(tuple(s))
        assert len(seen) == len(list(partitions(n)))


@pytest.mark.parametrize("F,n", [(F2, 9), (F3, 6)], ids=str)
def test_nilpotent_decide_agrees_with_brute_force(F, n):
    def partitions(m, largest):
        if m == 0:
            yield ()
            return
        for k in range(min(m, largest), 0, -1):
            for rest in partitions(m - k, k):
                yield (k,) + rest

    nos = []
    for parts in partitions(n, n):
        prof = NilpotentProfile.from_sizes(parts)
        v = nilpotent_decide(prof, F)
        if v.status == "Yes":
            assert_witness(prof.eldivs(F), v.witness)
        else:
            assert brute_force(prof.matrix(F)).status == "No", str(prof)
            nos.append(str(prof))
    if F is F2:
        assert "1|3|5" in nos


# -- fixtures from the semisimple examples -----------------------------------------


def test_semisimple_fixture_gf2():
    p, g = P(F2, "X^2+X+1"), P(F2, "X^2+X")
    h = p.compose(g)
    assert h == P(F2, "X^4+X+1") and is_irreducible(h)
    assert simtype_of_gCf(h, g).eldivs == ED(F2, {"X^2+X+1": [1, 1]})


def test_semisimple_fixture_gf3():
    p, g = P(F3, "X^2+1"), P(F3, "X^4")
    h = p.compose(g)
    assert h == P(F3, "X^8+1") and gcd(h, h.derivative()).is_one()
    assert simtype_of_gCf(h, g).eldivs == ED(F3, {"X^2+1": [1, 1, 1, 1]})


def test_semisimple_fixture_gf4():
    p, q, g = P(F4, "X^2+X+t"), P(F4, "X^2+X+t+1"), P(F4, "X^2+X")
    hp, hq = p.compose(g), q.compose(g)
    assert hp == P(F4, "X^4+X+t") and hq == P(F4, "X^4+X+t+1")
    for h in (hp, hq):
        assert gcd(h, h.derivative()).is_one()
    assert not q.divides(hp) and gcd(hp, hq).is_one()
    gA = crt([(g, hp), (Poly.x(F4), q)])
    assert simtype_of_gCf(hp * q, gA).eldivs == ED(F4, {"X^2+X+t": [1, 1], "X^2+X+t+1": [1]})
    gB = crt([(g, hp), (g, hq)])
    assert simtype_of_gCf(hp * hq, gB).eldivs == ED(F4, {"X^2+X+t": [1, 1], "X^2+X+t+1": [1, 1]})


def test_checked_rejects_bad_witness():
    from gcf.polytype import _checked

    with pytest.raises(PolytypeError):
        _checked(ED(F2, {"X": [1, 1]}), (P(F2, "X^2"), Poly.x(F2)), "demo")
