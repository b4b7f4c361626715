import random
from fractions import Fraction

import pytest
import sympy

from hallstack.classes import NumClass
from hallstack.motivic import Grassmannian, Product, Projective, euler_char
from hallstack.oracle import (
    CONIFOLD_DEGREE_ONE,
    MissingOracleEntry,
    OracleValidationError,
    UnsupportedGeometry,
    builtin_geometry,
    conifold,
    empty_geometry,
    load_geometry,
    pairing_value,
)
from hallstack.parsing import ParseError
from hallstack.polys import ParamPoly

MINIMAL = """\
[params]
n r
[class]
A1 degree=1 chi=r rank=1 moduli=projective(n+r-1)
B degree=1 chi=r rank=2
"""


def test_degree_one_builtin():
    g = conifold(1, "r")
    n, r = g.params.symbols("n", "r")
    a0, a1 = g.class_named("A0"), g.class_named("A1")
    assert g.ext1_dim(a0, a1) == n + r
    assert g.ext1_dim(a1, a1, diagonal=True) == n + r - 1
    assert g.ambient_dim(g.class_named("B")) == 2 * n + 2 * r - 5
    assert g.dt_value(1) == 1
    assert g.decompositions(g.class_named("B")) == [(a0, a1), (a1, a0)]


def test_pairing_examples():
    g = conifold(1, "r")
    n, r = g.params.symbols("n", "r")
    a0, a1 = g.class_named("A0"), g.class_named("A1")
    assert g.euler_pairing_Bp(a0, a1) == -(n + r)
    assert g.euler_pairing_Bp(a1, a1) == 0
    assert g.euler_pairing_Bp(a1, a0) == n + r


@pytest.mark.parametrize("geometry", [conifold(1, "r"), conifold(2, "2q")])
def test_ext_minus_hom_is_minus_pairing_for_extensions_by_the_section(geometry):
    a0, a1 = geometry.class_named("A0"), geometry.class_named("A1")
    assert geometry.ext1_dim(a0, a1) - geometry.hom_dim(a0, a1) == -geometry.euler_pairing_Bp(a0, a1)


def test_pairing_is_antisymmetric():
    n = ParamPoly.var("n")
    a = NumClass(1, ParamPoly.var("r"), 1)
    b = NumClass(2, ParamPoly.const(3), 2)
    assert pairing_value(n, a, b) == -pairing_value(n, b, a)


def test_degree_two_builtin_and_odd_case():
    g = conifold(2, "2q")
    n, q = g.params.symbols("n", "q")
    a0, a2 = g.class_named("A0"), g.class_named("A2")
    assert g.nonsplit_locus(a0, a2) == Product(Grassmannian(2, n + q), Projective(2 * n + 2 * q - 2))
    assert g.dt_value(2) == Fraction(1, 4)
    odd = conifold(2, "2q+1")
    assert odd.rank_one_classes() == []
    assert odd.rank_two_classes()[0].cls.chi == 2 * q + 1


def test_unsupported_geometries():
    with pytest.raises(UnsupportedGeometry):
        conifold(3, "r")
    with pytest.raises(UnsupportedGeometry):
        conifold(2, "q")
    with pytest.raises(UnsupportedGeometry):
        conifold(1, "n")
    with pytest.raises(UnsupportedGeometry):
        builtin_geometry("quintic")


def test_builtin_defaults():
    assert builtin_geometry("conifold").name == "conifold-d1-r"
    assert builtin_geometry("conifold", 2).name == "conifold-d2-q"
    assert builtin_geometry("empty").rank_one_classes() == []
    assert empty_geometry().decompositions(empty_geometry().class_named("B")) == []


def test_missing_entries():
    g = conifold(1, "r")
    a0, a1 = g.class_named("A0"), g.class_named("A1")
    with pytest.raises(MissingOracleEntry):
        g.hom_dim(a0, a0)
    with pytest.raises(MissingOracleEntry):
        g.class_named("Z")
    with pytest.raises(MissingOracleEntry):
        g.dt_value(2)
    with pytest.raises(ValueError):
        g.dt_value(0)
    assert g.nonsplit_locus(a1, a0) is None


def test_with_dt_replaces_values():
    g = conifold(1, "r").with_dt({1: Fraction(2)})
    assert g.dt_value(1) == 2
    assert conifold(1, "r").dt_value(1) == 1


def test_resolver_maps_class_names():
    g = conifold(1, "r")
    n, r = g.params.symbols("n", "r")
    assert euler_char(g.resolve("A1")) == n + r
    with pytest.raises(MissingOracleEntry):
        g.resolve("B")


def test_minimal_config_defaults():
    g = load_geometry(MINIMAL)
    entry = g.class_named("A1")
    assert g.moduli_descriptor(entry)[1].rank == 1
    assert g.twist == ParamPoly.var("n")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("[params]\nn\n[bogus]\n", 3, 1),
        ("n r\n", 1, 1),
        ("[params]\nn\n[class]\nA degree=1 chi=x rank=1\n", 4, 16),
        ("[params]\nn\n[class]\nA degree=1 chi=n rank=1 moduli=sphere(2)\n", 4, 32),
        ("[params]\nn\n[class]\nA degree=1 chi=n\n", 4, 1),
        ("[params]\nn\n[class]\nA degree=1 chi=n rank=1\n[hom]\nA Z off 0\n", 6, 3),
        ("[params]\nn\n[class]\nA degree=1 chi=n rank=1\n[hom]\nA A both 0\n", 6, 5),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        load_geometry(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_comments_are_ignored():
    text = CONIFOLD_DEGREE_ONE.format(c="r").replace("[params]", "[params] # parameters")
    assert load_geometry(text).name == "custom"


@pytest.mark.parametrize(
    "extra",
    [
        "[hom]\nA1 A1 diag 2\n",
        "[hom]\nA1 A1 off 1\n",
        "[ext1]\nA1 A1 off n-5\n",
        "[ext1]\nA1 A1 off n/2\n",
    ],
)
def test_validation_rejects_inconsistent_tables(extra):
    with pytest.raises(OracleValidationError):
        load_geometry(MINIMAL + extra)


def test_validation_rejects_negative_moduli_euler():
    text = MINIMAL.replace("projective(n+r-1)", "projective(-n-5)")
    with pytest.raises(OracleValidationError):
        load_geometry(text)


# Linear-algebra models of the extension spaces on the curve. A stable rank-one
# pair of degree one is a section of a line bundle with M global sections; the
# extension groups are cokernels of the maps that move one section onto another.


def coker_dim(columns: list[list[int]], rows: int) -> int:
    if not columns:
        return rows
    return rows - sympy.Matrix(columns).T.rank()


def random_section(rng: random.Random, size: int) -> list[int]:
    return [rng.randint(-9, 9) for _ in range(size)]


@pytest.mark.parametrize("M", [3, 4, 5, 6])
def test_pair_ext_oracle_matches_tables(M):
    rng = random.Random(M)
    g = conifold(2, "2q")
    point = {"n": M - 1, "q": 1}
    a0, a1, a2 = (g.class_named(name) for name in ("A0", "A1", "A2"))
    s1, s3 = random_section(rng, M), random_section(rng, M)

    # Same section: only the scalar multiples of s1 are killed.
    assert coker_dim([s1], M) == g.ext1_dim(a1, a1, diagonal=True).evaluate(point)
    # Distinct sections: (f, g) -> f s3 - g s1 kills a plane.
    assert coker_dim([s3, [-x for x in s1]], M) == g.ext1_dim(a1, a1).evaluate(point)
    # A plane of sections (s1, s3) of L + L extended by the bare section.
    nonsplit = g.nonsplit_locus(a0, a2)
    assert isinstance(nonsplit, Product)
    fiber = nonsplit.right
    assert isinstance(fiber, Projective)
    assert coker_dim([s1 + s3], 2 * M) == fiber.dim.evaluate(point) + 1
    # Reversed order: every section lifts, so the cokernel vanishes.
    identity = [[1 if i == j else 0 for i in range(M)] for j in range(M)]
    assert coker_dim(identity, M) == g.ext1_dim(a1, a0).evaluate(point)
