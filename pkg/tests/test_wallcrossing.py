from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallstack.classes import NumClass, SheafClass
from hallstack.motivic import euler_char
from hallstack.oracle import conifold, empty_geometry, load_geometry
from hallstack.polys import ParamPoly
from hallstack.wallcrossing import (
    composition_term,
    half_class_sum_rank_two_pairing,
    joyce_song_chi,
    ordered_decompositions,
    semistable_from_frozen,
    wallcrossing_general,
    wallcrossing_rank2,
    wallcrossing_terms,
)

D1 = conifold(1, "r")
D2 = conifold(2, "2q")
n, r = D1.params.symbols("n", "r")
q = D2.params.symbol("q")
M = n + q

# Odd twist parity so that the sign of a two-piece composition is decidable.
ODD_TWIST = """\
[params]
n
[pairing]
2n
[class]
S1 degree=1 chi=1 rank=0 moduli=point
B degree=2 chi=2 rank=2
[dt]
1 1
2 1/4
"""


def test_degree_one():
    assert wallcrossing_rank2(D1.class_named("B"), D1).value == (n + r) / 2


def test_degree_two_terms_by_length():
    terms = wallcrossing_terms(D2.class_named("B"), D2)
    assert terms == {1: -M, 2: 2 * M**2}
    assert wallcrossing_rank2(D2.class_named("B"), D2).value == -(M**2) / 2 + M / 4


def test_odd_euler_characteristic_gives_zero():
    g = conifold(2, "2q+1")
    assert wallcrossing_rank2(g.class_named("B"), g).value.is_zero()


def test_empty_geometry_gives_zero():
    g = empty_geometry()
    assert wallcrossing_rank2(g.class_named("B"), g).value.is_zero()


def test_two_piece_sign_by_hand():
    g = load_geometry(ODD_TWIST)
    (m,) = g.params.symbols("n")
    s1 = SheafClass(1, ParamPoly.const(1))
    # Both prefix pairings at rank one equal -(2n+1); the exponent 2p1 + p2 is odd.
    assert composition_term(g, (s1, s1), 1) == (2 * m + 1) ** 2 / 2
    assert joyce_song_chi(SheafClass(2, ParamPoly.const(2)), g) == -((2 * m + 1) ** 2) / 2
    # At rank two the pairings double and the exponent is even.
    assert composition_term(g, (s1, s1), 2) == 2 * (2 * m + 1) ** 2


def test_ordered_decompositions():
    s1 = SheafClass(1, q)
    s2 = SheafClass(2, 2 * q)
    seqs = list(ordered_decompositions(s2, [s1, s2]))
    assert seqs == [(s1, s1), (s2,)]
    assert list(ordered_decompositions(SheafClass(2, 2 * q + 1), [s1, s2])) == []


@pytest.mark.parametrize("c", [Fraction(k, 3) for k in range(-4, 7) if k != 0][:10])
def test_dt_homogeneity(c):
    scaled = D2.with_dt({1: c, 2: c / 4})
    base = wallcrossing_terms(D2.class_named("B"), D2)
    terms = wallcrossing_terms(scaled.class_named("B"), scaled)
    for length, value in base.items():
        assert terms[length] == value * c**length


def test_general_rank_two_matches_rank_two_sum():
    beta = D2.class_named("B")
    assert wallcrossing_general(beta, 2, D2).value == wallcrossing_rank2(beta, D2).value
    frozen = wallcrossing_general(D1.class_named("B"), 3, D1)
    assert semistable_from_frozen(frozen, 3).value == -frozen.value
    with pytest.raises(ValueError):
        wallcrossing_general(beta, 0, D2)


def test_half_class_euler_matches_moduli():
    a1 = D2.class_named("A1")
    assert joyce_song_chi(a1, D2) == euler_char(D2.moduli_descriptor(a1)[0])
    assert joyce_song_chi(a1, D2) == M


def test_half_class_sum_with_extra_factor():
    assert half_class_sum_rank_two_pairing(D2.class_named("A1"), D2) == 4 * M**2


@given(st.integers(1, 30), st.integers(-10, 30))
@settings(max_examples=30, deadline=None)
def test_numeric_evaluation_matches_symbolic(nv, qv):
    value = wallcrossing_rank2(D2.class_named("B"), D2).value.evaluate({"n": nv, "q": qv})
    m = nv + qv
    assert value == Fraction(-m * m, 2) + Fraction(m, 4)


def test_class_label_keeps_rank():
    inv = wallcrossing_rank2(NumClass(1, r, 2), D1)
    assert inv.class_label.rank == 2
