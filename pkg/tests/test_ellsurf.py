from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from k3sandwich.errors import (
    AdditiveAtNonRationalPlace,
    DegenerateCurve,
    DegenerateLeadingCoefficient,
    InconsistentData,
    NonMinimalModel,
    NonRationalPlace,
    NonzeroConstantTerm,
    PointNotOnCurve,
    SingularHeightGram,
)
from k3sandwich.exactalg import Place, Poly, RatFunc, T
from k3sandwich.lattice import (
    direct_sum,
    disc,
    disc_form_eval,
    disc_forms_isomorphic,
    discriminant_form,
    hyperbolic_plane,
    named_lattice,
    orthogonal_project,
    same_genus,
    signature,
)
from k3sandwich.ellsurf import (
    ZERO,
    KodairaFiber,
    SectionSpec,
    WeierstrassModel,
    classify_at,
    component_index,
    euler_number,
    fiber_from_symbol,
    fiber_table,
    from_cubic,
    height,
    height_pairing,
    j_invariant,
    kodaira_classify,
    ns_disc,
    ns_gram,
    point,
    point_add,
    point_double,
    point_mul,
    point_neg,
    section_specs,
    trivial_lattice,
)

S2 = WeierstrassModel.extended(T ** 4 - T - 1, T)
P2 = point(1, T ** 2)
S3 = WeierstrassModel.extended(T ** 4 + T ** 2 - T + 1, T ** 3)
P3 = point(T ** 2, T ** 4 + T ** 2)
TORSION = point(0, 0)


def table(W):
    return fiber_table(kodaira_classify(W))


# models -------------------------------------------------------------------------

def test_from_cubic():
    W = from_cubic(T + 1, T ** 3 + 1, 2 * T + 1)
    assert W.a == T ** 3 + 1 and W.b == (2 * T + 1) * (T + 1)
    with pytest.raises(NonzeroConstantTerm):
        from_cubic(1, 1, 1, c0=1)
    with pytest.raises(DegenerateLeadingCoefficient):
        from_cubic(0, 1, 1)


def test_degenerate_curve():
    with pytest.raises(DegenerateCurve):
        WeierstrassModel.extended(2 * T, T ** 2)


def test_j_invariants():
    assert j_invariant(WeierstrassModel.short(1, 0)) == RatFunc(1728)
    assert j_invariant(WeierstrassModel.short(0, 1)) == RatFunc(0)
    a, b = T ** 4 + 1, T
    j = j_invariant(WeierstrassModel.extended(a, b))
    assert j == RatFunc(256 * (a * a - 3 * b) ** 3, b * b * (a * a - 4 * b))


def test_group_law():
    assert point_add(S2, P2, ZERO) == P2
    assert point_double(S2, TORSION) == ZERO
    assert point_add(S2, P2, point_neg(S2, P2)) == ZERO
    Q = point_mul(S2, P2, 3)
    assert S2.contains(Q)
    assert point_add(S2, point_mul(S2, P2, 2), P2) == Q
    with pytest.raises(PointNotOnCurve):
        point_add(S2, point(2, T), P2)


# fibres --------------------------------------------------------------------------

def test_series1_generic_tables():
    a, b = 2 * T ** 2 + 3 * T + 5, T ** 2 + T + 7
    W = WeierstrassModel.short(T ** 3 * a, T ** 5 * b)
    assert table(W) == {"III*": 2, "I1": 6}
    assert trivial_lattice(kodaira_classify(W)).rank == 16


def test_series1_spec_instance():
    # 4a^3 + 27 t b^2 = (t^2 + 3t + 1)^2 (4t^2 + 3t + 4) for this choice
    a, b = T ** 2 + 1, T ** 2 + T + 1
    W = WeierstrassModel.short(T ** 3 * a, T ** 5 * b)
    assert table(W) == {"III*": 2, "I2": 2, "I1": 2}
    assert euler_number(kodaira_classify(W)) == 24


def test_series2_and_3_tables():
    assert table(WeierstrassModel.extended(T ** 4 + 1, T)) == {"I2": 1, "I14": 1, "I1": 8}
    assert table(WeierstrassModel.extended(T ** 4 + 1, T ** 3)) == {"I6": 1, "I10": 1, "I1": 8}


def test_places_and_order():
    fibres = kodaira_classify(WeierstrassModel.extended(T ** 4 + 1, T))
    assert fibres[0].place == Place.at(0) and fibres[0].symbol == "I2"
    assert fibres[-1].place.is_infinity and fibres[-1].symbol == "I14"


def test_trivial_lattices():
    E7 = named_lattice("E7")
    two_iii = [KodairaFiber("III*"), KodairaFiber("III*")]
    assert same_genus(trivial_lattice(two_iii), direct_sum(hyperbolic_plane(), E7, E7))
    L = trivial_lattice([KodairaFiber("I", 14), KodairaFiber("I", 2)])
    assert L.rank == 16 and abs(disc(L)) == 28


@pytest.mark.parametrize("A,B,kind", [
    (T, 0, "III"), (0, T, "II"), (0, T ** 2, "IV"), (T ** 2, T ** 3, "I0*"),
    (0, T ** 4, "IV*"), (T ** 3, T ** 5, "III*"), (0, T ** 5, "II*"),
    (-3 * T ** 2, 2 * T ** 3 + T ** 4, "I1*"), (-3 * T ** 2, 2 * T ** 3 + T ** 5, "I2*"),
])
def test_local_types(A, B, kind):
    W = WeierstrassModel.short(A, B)
    f = classify_at(W, Place.at(0))
    assert f.symbol == kind
    assert f.euler == f.disc_order


def test_non_minimal():
    with pytest.raises(NonMinimalModel):
        classify_at(WeierstrassModel.short(T ** 4, T ** 6), Place.at(0))


def test_additive_at_irrational_place():
    g = T ** 2 - 2
    with pytest.raises(AdditiveAtNonRationalPlace):
        kodaira_classify(WeierstrassModel.short(g * g, g ** 3 + g ** 2))


def test_alt_fibration_generic():
    W = from_cubic(2 * T + 3, T ** 3 + 5 * T + 7, 11 * T + 13)
    assert table(W) == {"I8*": 1, "I2": 2, "I1": 6}


def test_euler_examples():
    fs = [fiber_from_symbol("I4*"), fiber_from_symbol("I1", 2), fiber_from_symbol("I2", 6)]
    assert euler_number(fs) == 24


@pytest.mark.parametrize("n", range(2, 12))
def test_correction_table_symmetry(n):
    f = KodairaFiber("I", n)
    vals = [f.correction(i) for i in range(1, n)]
    assert vals == vals[::-1]
    assert max(vals) == f.correction(n // 2)


def test_correction_table_values():
    assert KodairaFiber("III*").correction(1) == Fraction(3, 2)
    assert KodairaFiber("IV*").correction(1) == Fraction(4, 3)
    assert KodairaFiber("I*", 4).correction(1) == 1
    assert KodairaFiber("I*", 4).correction(2) == 2
    assert KodairaFiber("I*", 4).pair_correction(2, 3) == Fraction(3, 2)


@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5).filter(lambda c: c[0] and c[4]),
       st.sampled_from([1, 3]), st.sampled_from([Fraction(2), Fraction(1, 3), Fraction(-5, 2)]))
@settings(max_examples=25, deadline=None)
def test_tate_invariant_under_scaling(coeffs, k, u):
    try:
        W = WeierstrassModel.extended(Poly(coeffs), T ** k)
    except DegenerateCurve:
        assume(False)
    fibres = kodaira_classify(W)
    assert euler_number(fibres) == 24
    at_inf = [f.disc_order for f in fibres if f.place.is_infinity]
    assert W.disc.degree + sum(at_inf) == 24
    assert fiber_table(kodaira_classify(W.scaled(u))) == fiber_table(fibres)


# heights ---------------------------------------------------------------------------

def test_component_indices():
    fibres = kodaira_classify(S2)
    at0, atinf = fibres[0], fibres[-1]
    assert component_index(S2, P2, atinf) in (4, 10)
    assert component_index(S2, P2, at0) == 0
    f3 = kodaira_classify(S3)
    assert component_index(S3, P3, f3[0]) == 2
    assert component_index(S3, P3, f3[-1]) == 2
    assert all(component_index(S2, ZERO, f) == 0 for f in fibres if f.place.is_rational)


def test_component_index_irrational():
    fibres = kodaira_classify(S2)
    batch = next(f for f in fibres if not f.place.is_rational)
    with pytest.raises(NonRationalPlace):
        component_index(S2, P2, batch)


def test_heights():
    assert height(S2, P2) == Fraction(8, 7)
    assert height(S3, P3) == Fraction(16, 15)
    assert height(S2, TORSION) == 0
    assert height(S3, TORSION) == 0


def test_height_is_quadratic():
    for W, P in ((S2, P2), (S3, P3)):
        h = height(W, P)
        assert height(W, point_mul(W, P, 2)) == 4 * h
        assert height(W, point_mul(W, P, 3)) == 9 * h
        assert height(W, point_add(W, P, TORSION)) == h
        assert height_pairing(W, P, TORSION) == 0


def test_ns_disc_examples():
    I = fiber_from_symbol
    assert ns_disc([I("I4*"), I("I1", 2), I("I2", 6)], [[5]], 2) == 2 ** 6 * 5
    assert ns_disc([I("I7"), I("I1"), I("I2", 8)], [], 2) == 2 ** 6 * 7
    assert ns_disc([I("I5"), I("I3"), I("I2", 8)], [], 2) == 2 ** 6 * 15
    assert ns_disc([I("I14"), I("I2")], [[Fraction(8, 7)]], 2) == 8
    with pytest.raises(SingularHeightGram):
        ns_disc([I("I2")], [[0]], 1)


def test_ns_gram_generic_series2():
    W = WeierstrassModel.extended(T ** 4 + 1, T)
    fibres = kodaira_classify(W)
    ns = ns_gram(fibres, torsion=section_specs(W, [TORSION], fibres)).lattice
    ref = direct_sum(hyperbolic_plane(), named_lattice("A6"), named_lattice("E8"))
    assert same_genus(ns, ref)


def test_ns_gram_generic_series3():
    from k3sandwich.lattice import cyclic_form
    W = WeierstrassModel.extended(T ** 4 + 1, T ** 3)
    fibres = kodaira_classify(W)
    ns = ns_gram(fibres, torsion=section_specs(W, [TORSION], fibres)).lattice
    assert abs(disc(ns)) == 15 and signature(ns) == (1, 15)
    q = cyclic_form(3, Fraction(-4, 3)) + cyclic_form(5, Fraction(-2, 5))
    assert disc_forms_isomorphic(discriminant_form(ns), q)


def test_ns_gram_u_only():
    L = ns_gram([fiber_from_symbol("I1", 24)]).lattice
    assert L.gram.tolist() == [[-2, 1], [1, 0]]
    assert same_genus(L, hyperbolic_plane())


def test_ns_gram_matches_ns_disc():
    for W, P, N in ((S2, P2, 4), (S3, P3, 8)):
        fibres = kodaira_classify(W)
        p, t = section_specs(W, [P, TORSION], fibres)
        ns = ns_gram(fibres, [p], torsion=[t]).lattice
        assert abs(disc(ns)) == ns_disc(fibres, [[p.height]], 2) == 2 * N


def test_ns_gram_inconsistent():
    spec = SectionSpec("P", Fraction(0), {0: 1}, Fraction(1, 3))
    other = SectionSpec("Q", Fraction(0), {}, Fraction(1))
    with pytest.raises(InconsistentData):
        ns_gram([KodairaFiber("I", 3)], [spec, other])


def test_projection_argument_n5():
    """P meets one III* off the identity with (P.O) = 0 and h = 5/2; phi(2P)/5 has q = -2/5."""
    N = 5
    fibres = [KodairaFiber("III*", place=Place.at(0)), KodairaFiber("III*", place=Place.infinity()),
              fiber_from_symbol("I1", 6)]
    P = SectionSpec("P", Fraction(0), {0: 1}, Fraction(N, 2))
    model = ns_gram(fibres, [P])
    L = model.lattice
    assert abs(disc(L)) == 2 * N
    n = L.rank
    e_P = [0] * (n - 1) + [1]
    trivial = [[int(i == j) for j in range(n)] for i in range(n - 1)]
    phiP = orthogonal_project(L, e_P, trivial)
    phi2P = tuple(2 * x for x in phiP)
    assert L.square(phi2P) == -2 * N
    assert L.inner(phi2P, phiP) == -N
    order, q = disc_form_eval(L, tuple(x / N for x in phi2P))
    assert order == N and q == Fraction(-2, N) % 2
