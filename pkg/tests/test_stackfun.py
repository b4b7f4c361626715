from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallstack.groups import GL2, GM, GM2, MissingFCoefficient, SemiDirect, TorusUnion
from hallstack.motivic import Grassmannian, Point, Projective, Torus
from hallstack.polys import ParamSpace
from hallstack.stackfun import (
    ZERO,
    Convention,
    IntegrandShapeError,
    SFTerm,
    StackFunction,
    apply_chi_relation,
    is_normal_form,
    is_virtually_indecomposable,
    motivic_integrate,
    normalize,
    render_sf,
    sf_scale,
    torus_decompose,
)

SPACE = ParamSpace(("n",))
(n,) = SPACE.symbols("n")

# Every group here has weights under both conventions.
SPACES = [Point(), Projective(2), Grassmannian(2, 4), Projective(n), Torus(1)]
GROUPS = [GM, GM2, GL2(), SemiDirect(1, 2), SemiDirect(1, 1)]

terms = st.builds(
    lambda c, s, g, d: SFTerm(c, s, g, d),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.sampled_from(SPACES),
    st.sampled_from(GROUPS),
    st.sampled_from([None, 0, 1, n]),
)
stack_functions = st.lists(terms, max_size=5).map(StackFunction)


@given(stack_functions, st.sampled_from(list(Convention)))
@settings(max_examples=200, deadline=None)
def test_normalize_is_idempotent(f, convention):
    once = normalize(f, convention)
    assert is_normal_form(once, convention)
    assert normalize(once, convention) == once


@given(stack_functions, stack_functions, st.fractions(min_value=-3, max_value=3, max_denominator=3))
@settings(max_examples=200, deadline=None)
def test_normalize_is_linear(f, g, c):
    for convention in Convention:
        assert normalize(f + sf_scale(c, g), convention) == normalize(f, convention) + sf_scale(c, normalize(g, convention))


def test_groups_without_weights_are_reported():
    with pytest.raises(MissingFCoefficient):
        normalize(StackFunction.single(Point(), TorusUnion()))
    with pytest.raises(MissingFCoefficient):
        normalize(StackFunction.single(Point(), SemiDirect(3, 1)), Convention.TORUS)


def test_like_terms_combine_and_cancel():
    a = StackFunction.single(Point(), GM, 1)
    assert (a + a).terms[0].coeff == 2
    assert (a - a).is_zero()
    assert a - a == ZERO


def test_reldim_separates_terms():
    a = StackFunction.single(Point(), GM, 1, reldim=0)
    b = StackFunction.single(Point(), GM, 1, reldim=1)
    assert len(a + b) == 2


def test_gl2_decomposes_with_standard_weights():
    f = normalize(StackFunction.single(Point(), GL2()))
    assert f.coefficients() == {(Point(), GM2, None): Fraction(1, 2), (Point(), GM, None): Fraction(-3, 4)}


def test_conventions_treat_borel_differently():
    f = StackFunction.single(Projective(1), SemiDirect(1, 1))
    assert normalize(f, Convention.PRINTED).coefficients() == {(Point(), SemiDirect(1, 1), None): 2}
    assert normalize(f, Convention.TORUS).coefficients() == {(Point(), GM, None): 2}


def test_chi_relation_and_torus_decompose_single_steps():
    term = SFTerm(3, Projective(n), GM)
    assert apply_chi_relation(term).coefficients() == {(Point(), GM, None): 3 * (n + 1)}
    assert torus_decompose(SFTerm(1, Point(), SemiDirect(1, 2))).coefficients() == {
        (Point(), GM2, None): 1,
        (Point(), GM, None): -1,
    }


def test_virtual_indecomposability():
    assert is_virtually_indecomposable(StackFunction.single(Point(), GM))
    assert is_virtually_indecomposable(StackFunction.single(Point(), SemiDirect(2, 1)))
    assert not is_virtually_indecomposable(StackFunction.single(Point(), SemiDirect(2, 1)), Convention.TORUS)
    assert not is_virtually_indecomposable(StackFunction.single(Point(), GM2))


def test_motivic_integration():
    integrand = StackFunction.single(Point(), GM, 2)
    assert motivic_integrate(Projective(n), integrand).coefficients() == {(Projective(n), GM, None): 2}
    fibered = StackFunction.single(Projective(1), GM)
    assert motivic_integrate(Projective(n), fibered).terms[0].coeff == 2
    with pytest.raises(IntegrandShapeError):
        motivic_integrate(Projective(n), integrand + StackFunction.single(Point(), GM2))


def test_recorder_sees_each_pass():
    seen = []
    normalize(StackFunction.single(Projective(1), GL2()), record=lambda op, a, b: seen.append(op))
    assert seen[:2] == ["torus_decompose", "apply_chi_relation"]


def test_rendering():
    f = StackFunction.single(Point(), GM, Fraction(-1, 2))
    assert "Gm" in render_sf(f)
    assert render_sf(ZERO) == "0"
