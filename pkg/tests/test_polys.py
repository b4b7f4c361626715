from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hallstack.polys import (
    InexactDivision,
    Parity,
    ParamPoly,
    ParamRational,
    ParamSpace,
    ParityError,
    PoleReport,
    T,
    eval_limit,
    format_poly,
    parity_of,
    poly_divexact,
    poly_gcd,
    sign_of_power,
)

SPACE = ParamSpace(("n", "r", "q"))
n, r, q = SPACE.symbols("n", "r", "q")

monomials = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monomials, coefficients, max_size=5).map(
    lambda d: sum((c * n**a * r**b * q**e for (a, b, e), c in d.items()), ParamPoly())
)


def to_sympy(p: ParamPoly):
    syms = {name: sympy.Symbol(name) for name in ("n", "r", "q", "t")}
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in mono:
            term *= syms[name] ** e
        expr += term
    return sympy.expand(expr)


@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))


@given(polys, polys, st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_evaluation_is_a_ring_homomorphism(a, b, x, y, z):
    point = {"n": x, "r": y, "q": z}
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_zero_coefficients_are_dropped():
    assert (n - n).is_zero()
    assert ParamPoly({(("n", 1),): Fraction(0)}).is_zero()


def test_canonical_printing():
    assert format_poly((n + r) / 2) == "1/2*n+1/2*r"
    assert format_poly(-((n + q) ** 2) / 2 - (n + q)) == "-1/2*n^2-n*q-1/2*q^2-n-q"
    assert format_poly(ParamPoly()) == "0"
    assert format_poly(T**4 + T**2 - 1) == "t^4+t^2-1"


def test_undeclared_parameter_is_rejected():
    with pytest.raises(NameError):
        SPACE.symbol("x")
    with pytest.raises(NameError):
        SPACE.check(ParamPoly.var("x"))


def test_exact_division():
    assert poly_divexact((n + r) * (n - r), n - r) == n + r
    assert poly_divexact((T**4 - 1) * (T**2 - 1) * T**2, T**2 - 1) == (T**4 - 1) * T**2


def test_inexact_division_reports_quotient_and_remainder():
    result = poly_divexact(T**4 + T**2 - 1, T**2 - 1)
    assert isinstance(result, InexactDivision)
    assert result.quotient == T**2 + 2
    assert result.remainder == ParamPoly.const(1)


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divexact_recovers_products(a, b):
    assert poly_divexact(a * b, b) == a


@pytest.mark.parametrize(
    "p, expected",
    [
        (2 * n + 2 * r - 4, Parity.EVEN),
        (2 * n + 2 * r - 5, Parity.ODD),
        (n * (n + 1), Parity.EVEN),
        (n**2 + n + 1, Parity.ODD),
        (n + r, Parity.UNDECIDABLE),
        (n**3 + r, Parity.UNDECIDABLE),
        (ParamPoly(), Parity.EVEN),
    ],
)
def test_parity_examples(p, expected):
    assert parity_of(p) is expected


int_polys = st.dictionaries(monomials, st.integers(-5, 5), max_size=5).map(
    lambda d: sum((c * n**a * r**b * q**e for (a, b, e), c in d.items()), ParamPoly())
)


@given(int_polys)
@settings(max_examples=200)
def test_parity_agrees_with_twenty_numeric_points(p):
    points = [{"n": x, "r": y, "q": z} for x in range(-1, 2) for y in range(-1, 2) for z in range(0, 2)]
    points = points[:18] + [{"n": 5, "r": -3, "q": 2}, {"n": 10, "r": 7, "q": -4}]
    values = {int(p.evaluate(pt)) % 2 for pt in points}
    parity = parity_of(p)
    if parity is Parity.EVEN:
        assert values == {0}
    elif parity is Parity.ODD:
        assert values == {1}
    else:
        # A nonconstant multilinear GF(2) polynomial takes both values on {0,1}^k.
        assert values == {0, 1}


def test_parity_rejects_fractional_coefficients():
    with pytest.raises(ValueError):
        parity_of(n / 2)


def test_sign_of_power():
    assert sign_of_power(4 - 2 * n - 2 * r) == 1
    assert sign_of_power(2 * n + 2 * r - 5) == -1
    with pytest.raises(ParityError):
        sign_of_power(n + r)


def test_rational_reduction_uses_common_factors():
    f = ParamRational((n + r) * (n - 1), (n - 1) * 2)
    assert f.is_polynomial()
    assert f.as_poly() == (n + r) / 2


def test_gcd_is_monic():
    g = poly_gcd(2 * (n + r) * (n - r), 4 * (n + r) ** 2)
    assert g == n + r


def test_eval_limit_cancels_removable_zero():
    f = ParamRational(n**2 - 1, n - 1)
    assert eval_limit(f, {"n": 1}) == Fraction(2)


def test_eval_limit_reports_pole():
    f = ParamRational(n + 1, n - 1)
    report = eval_limit(f, {"n": 1})
    assert isinstance(report, PoleReport)
    assert report.numerator_value == 2
