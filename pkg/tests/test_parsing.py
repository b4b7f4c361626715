from fractions import Fraction

import pytest

from hallstack.parsing import Call, ParseError, parse_node, parse_poly, parse_rational
from hallstack.polys import ParamSpace

SPACE = ParamSpace(("n", "r", "q"))
n, r, q = SPACE.symbols("n", "r", "q")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("n+r-1", n + r - 1),
        ("2q", 2 * q),
        ("2n+2r-5", 2 * n + 2 * r - 5),
        ("(n+q)^2", (n + q) ** 2),
        ("-1/2*(n+q)^2-(n+q)", -((n + q) ** 2) / 2 - (n + q)),
        ("3 * n r", 3 * n * r),
    ],
)
def test_arithmetic(text, expected):
    assert parse_poly(text, SPACE) == expected


def test_calls_build_nodes():
    node = parse_node("product(grassmannian(2,n+q),projective(2n+2q-2))", SPACE)
    assert isinstance(node, Call)
    assert node.name == "product"
    inner = node.args[0]
    assert isinstance(inner, Call) and inner.args[1] == n + q


def test_undeclared_name_reports_column():
    with pytest.raises(ParseError) as info:
        parse_poly("n+x", SPACE, line=4)
    assert info.value.line == 4
    assert info.value.column == 3
    assert "undeclared" in str(info.value)


def test_bad_character_reports_column():
    with pytest.raises(ParseError) as info:
        parse_poly("n + $", SPACE)
    assert info.value.column == 5


def test_unbalanced_parenthesis():
    with pytest.raises(ParseError):
        parse_poly("(n+r", SPACE)


def test_division_only_by_constants():
    assert parse_poly("n/2", SPACE) == n / 2
    with pytest.raises(ParseError):
        parse_poly("1/n", SPACE)


def test_rational_literals():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("1/4") == Fraction(1, 4)
