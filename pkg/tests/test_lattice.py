from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3sandwich.errors import (
    DegenerateLattice,
    DegenerateSublattice,
    NonIntegralGlue,
    NonPrimitiveVector,
    NotInDual,
    OddGlue,
    OddResult,
)
from k3sandwich.lattice import (
    Lattice,
    binary,
    cyclic_form,
    direct_sum,
    disc,
    disc_form_eval,
    disc_forms_isomorphic,
    discriminant_form,
    hyperbolic_plane,
    lattice_from_json,
    lattice_to_json,
    named_lattice,
    orthogonal_complement,
    orthogonal_project,
    overlattice,
    rank1,
    same_genus,
    signature,
    twist,
)


def test_root_lattice_dets():
    # |det| of A_n is n+1, D_n is 4, E6/E7/E8 are 3/2/1
    assert abs(disc(named_lattice("A6"))) == 7
    assert abs(disc(named_lattice("D8"))) == 4
    assert [abs(disc(named_lattice(f"E{k}"))) for k in (6, 7, 8)] == [3, 2, 1]


def test_signatures():
    assert signature(hyperbolic_plane()) == (1, 1)
    assert signature(named_lattice("E8")) == (0, 8)
    E7 = named_lattice("E7")
    assert signature(direct_sum(hyperbolic_plane(), E7, E7)) == (1, 15)


def test_rejects_bad_grams():
    with pytest.raises(DegenerateLattice):
        Lattice([[-2, 2], [2, -2]])
    with pytest.raises(OddResult):
        Lattice([[-1]])


def test_twist():
    U2 = twist(hyperbolic_plane(), 2)
    assert U2.gram.tolist() == [[0, 2], [2, 0]]
    L = direct_sum(U2, U2, rank1(-4))
    assert disc(L) == -64
    assert twist(L, 1) == L


def test_cyclic_forms():
    assert disc_forms_isomorphic(discriminant_form(named_lattice("E7")), cyclic_form(2, Fraction(1, 2)))
    assert disc_forms_isomorphic(discriminant_form(named_lattice("A1")), cyclic_form(2, Fraction(3, 2)))
    assert disc_forms_isomorphic(discriminant_form(named_lattice("A6")), cyclic_form(7, Fraction(8, 7)))


def test_e7_is_minus_a1():
    qE7 = discriminant_form(named_lattice("E7"))
    qA1 = discriminant_form(named_lattice("A1"))
    assert disc_forms_isomorphic(qE7, qA1, negate=True)
    assert not disc_forms_isomorphic(qE7, qA1)


def test_a6_complement():
    qA6 = discriminant_form(named_lattice("A6"))
    qB = discriminant_form(binary(-2, -1, -4))
    assert disc_forms_isomorphic(qA6, qB, negate=True)
    assert not disc_forms_isomorphic(qA6, qB)


def test_rank_two_fifteen():
    q = discriminant_form(binary(-4, -1, -4))
    plus = cyclic_form(3, Fraction(4, 3)) + cyclic_form(5, Fraction(2, 5))
    minus = cyclic_form(3, Fraction(-4, 3)) + cyclic_form(5, Fraction(-2, 5))
    assert disc_forms_isomorphic(q, plus)
    assert disc_forms_isomorphic(q, minus, negate=True)
    # only the 3-part sees the sign: -1 is a square mod 5
    assert not disc_forms_isomorphic(q, minus)


def test_overlattice_index_two():
    A9, A5 = named_lattice("A9"), named_lattice("A5")
    L = direct_sum(hyperbolic_plane(), A9, A5)
    # 5 * (A9 generator)/10 + 3 * (A5 generator)/6: the 2-torsion element
    g9 = discriminant_form(A9).generators[0]
    g5 = discriminant_form(A5).generators[0]
    glue = [0, 0] + [5 * x for x in g9] + [3 * x for x in g5]
    M = overlattice(L, [glue])
    assert abs(disc(M)) == abs(disc(L)) // 4 == 15


def test_overlattice_errors():
    A1 = named_lattice("A1")
    with pytest.raises(NonIntegralGlue):
        overlattice(A1, [[Fraction(1, 3)]])
    with pytest.raises(OddGlue):
        overlattice(direct_sum(A1, A1), [[Fraction(1, 2), Fraction(1, 2)]])


def test_e8_from_e7_and_a1():
    E7, A1 = named_lattice("E7"), named_lattice("A1")
    L = direct_sum(E7, A1)
    g = discriminant_form(E7).generators[0]
    E8 = overlattice(L, [list(g) + [Fraction(1, 2)]])
    assert abs(disc(E8)) == 1 and signature(E8) == (0, 8)


def test_orthogonal_complement():
    A1A1 = direct_sum(named_lattice("A1"), named_lattice("A1"))
    C = orthogonal_complement(A1A1, [1, 2])
    assert C.gram.tolist() == [[-10]]
    B = binary(-2, -1, -4)
    assert orthogonal_complement(B, [1, 1]).gram.tolist() == [[-56]]
    with pytest.raises(NonPrimitiveVector):
        orthogonal_complement(A1A1, [2, 2])


def test_projection_and_eval():
    L = direct_sum(hyperbolic_plane(), named_lattice("A1"))
    S = [(1, 0, 0), (0, 1, 0)]
    assert orthogonal_project(L, (1, 1, 0), S) == (0, 0, 0)
    assert orthogonal_project(L, (0, 0, 1), S) == (0, 0, 1)
    with pytest.raises(DegenerateSublattice):
        orthogonal_project(L, (0, 0, 1), [(1, 0, 0)])
    assert disc_form_eval(L, (0, 0, Fraction(1, 2))) == (2, Fraction(3, 2))
    assert disc_form_eval(L, (1, 0, 0)) == (1, 0)
    with pytest.raises(NotInDual):
        disc_form_eval(L, (0, 0, Fraction(1, 3)))


def test_e7_generator_value():
    E7 = named_lattice("E7")
    q = discriminant_form(E7)
    order, val = disc_form_eval(E7, q.generators[0])
    assert order == 2 and val == Fraction(1, 2)  # -3/2 mod 2


def test_json_round_trip():
    L = binary(-4, -1, -4)
    assert lattice_from_json(lattice_to_json(L)) == L
    q = discriminant_form(L)
    from k3sandwich.lattice import DiscriminantForm
    assert disc_forms_isomorphic(DiscriminantForm.from_json(q.to_json()), q)


def test_same_genus():
    assert same_genus(direct_sum(hyperbolic_plane(), named_lattice("E8")),
                      direct_sum(hyperbolic_plane(), named_lattice("E8")))
    assert not same_genus(named_lattice("A2"), named_lattice("A1"))


even_grams = st.tuples(st.integers(1, 6), st.integers(-5, 5), st.integers(1, 6)).filter(
    lambda t: 4 * t[0] * t[2] - t[1] ** 2 > 0)


@given(even_grams)
@settings(max_examples=60, deadline=None)
def test_group_order_is_det(t):
    a, b, c = t
    L = binary(-2 * a, b, -2 * c)
    assert discriminant_form(L).size == abs(disc(L))


@given(even_grams, even_grams)
@settings(max_examples=25, deadline=None)
def test_direct_sum_forms(s, t):
    L1 = binary(-2 * s[0], s[1], -2 * s[2])
    L2 = binary(-2 * t[0], t[1], -2 * t[2])
    S = direct_sum(L1, L2)
    assert disc(S) == disc(L1) * disc(L2)
    if abs(disc(S)) <= 2000:
        assert disc_forms_isomorphic(discriminant_form(S), discriminant_form(L1) + discriminant_form(L2))
