"""Symbolic algebraic spaces with Euler characteristics and Poincaré polynomials.

Poincaré polynomials of the catalog spaces only involve even powers of ``t``,
so internally they are built in ``u = t^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .groups import GroupExpr, group_poincare
from .polys import T, InexactDivision, ParamPoly, ParamRational, poly_divexact

U = T**2


def _poly(value: ParamPoly | int) -> ParamPoly:
    return ParamPoly.coerce(value)


class Space:
    """Base class of motivic expressions; all subclasses are frozen dataclasses."""


@dataclass(frozen=True)
class Point(Space):
    pass


@dataclass(frozen=True)
class Affine(Space):
    dim: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "dim", _poly(self.dim))


@dataclass(frozen=True)
class Torus(Space):
    rank: int


@dataclass(frozen=True)
class Projective(Space):
    dim: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "dim", _poly(self.dim))


@dataclass(frozen=True)
class Grassmannian(Space):
    """``k``-planes in an ``m``-dimensional space."""

    k: int
    m: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _poly(self.m))
        if self.k < 0:
            raise ValueError("k must be non-negative")


@dataclass(frozen=True)
class Flag12(Space):
    """Flags of a line inside a plane in an ``m``-dimensional space."""

    m: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _poly(self.m))


@dataclass(frozen=True)
class Product(Space):
    left: Space
    right: Space


@dataclass(frozen=True)
class Disjoint(Space):
    left: Space
    right: Space


@dataclass(frozen=True)
class Complement(Space):
    """``outer`` minus a closed subspace isomorphic to ``inner`` (caller asserted)."""

    outer: Space
    inner: Space


@dataclass(frozen=True)
class Diagonal(Space):
    """The diagonal copy of ``base`` inside ``base x base``."""

    base: Space


@dataclass(frozen=True)
class DistinctPairs(Space):
    """Unordered pairs of distinct points of ``base``."""

    base: Space


@dataclass(frozen=True)
class Bundle(Space):
    """Total space of a Zariski-locally trivial fibration."""

    base: Space
    fiber: Space


@dataclass(frozen=True)
class FreeQuotient(Space):
    """Quotient of ``total`` by a free action of the multiplicative group."""

    total: Space


@dataclass(frozen=True)
class PoincareSpace(Space):
    """A space known only through its (numeric) Poincaré polynomial."""

    label: str
    poincare: ParamPoly


@dataclass(frozen=True)
class EulerSpace(Space):
    """A space known only through its Euler characteristic."""

    label: str
    chi: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", _poly(self.chi))


@dataclass(frozen=True)
class ModuliDescriptor(Space):
    """Placeholder resolved to a concrete space by a geometry oracle."""

    tag: str


Resolver = Callable[[str], Space]


class UnresolvedDescriptor(LookupError):
    pass


class SymbolicDimensionError(ValueError):
    pass


class UnavailableInvariant(ValueError):
    pass


def product(*spaces: Space) -> Space:
    """Product that drops point factors."""
    factors = [s for s in spaces if not isinstance(s, Point)]
    if not factors:
        return Point()
    result = factors[0]
    for s in factors[1:]:
        result = Product(result, s)
    return result


def off_diagonal(base: Space) -> Space:
    return Complement(Product(base, base), Diagonal(base))


def _binomial_poly(m: ParamPoly, k: int) -> ParamPoly:
    result = ParamPoly.const(1)
    for i in range(k):
        result = result * (m - i)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return result / fact


def _resolve(x: ModuliDescriptor, resolve: Optional[Resolver]) -> Space:
    if resolve is None:
        raise UnresolvedDescriptor(f"moduli descriptor {x.tag!r} needs an oracle")
    return resolve(x.tag)


def euler_char(x: Space, resolve: Optional[Resolver] = None) -> ParamPoly:
    """Topological Euler characteristic."""
    if isinstance(x, Point):
        return ParamPoly.const(1)
    if isinstance(x, Affine):
        return ParamPoly.const(1)
    if isinstance(x, Torus):
        return ParamPoly.const(1 if x.rank == 0 else 0)
    if isinstance(x, Projective):
        return x.dim + 1
    if isinstance(x, Grassmannian):
        return _binomial_poly(x.m, x.k)
    if isinstance(x, Flag12):
        return 2 * _binomial_poly(x.m, 2)
    if isinstance(x, Product):
        return euler_char(x.left, resolve) * euler_char(x.right, resolve)
    if isinstance(x, Disjoint):
        return euler_char(x.left, resolve) + euler_char(x.right, resolve)
    if isinstance(x, Complement):
        return euler_char(x.outer, resolve) - euler_char(x.inner, resolve)
    if isinstance(x, Diagonal):
        return euler_char(x.base, resolve)
    if isinstance(x, DistinctPairs):
        c = euler_char(x.base, resolve)
        return (c * c - c) / 2
    if isinstance(x, Bundle):
        return euler_char(x.base, resolve) * euler_char(x.fiber, resolve)
    if isinstance(x, FreeQuotient):
        if not euler_char(x.total, resolve).is_zero():
            raise ValueError("a free torus action forces Euler characteristic zero")
        return first_moment(x.total, resolve)
    if isinstance(x, PoincareSpace):
        return ParamPoly.const(x.poincare.subs({"t": 1}).constant_value())
    if isinstance(x, EulerSpace):
        return x.chi
    if isinstance(x, ModuliDescriptor):
        return euler_char(_resolve(x, resolve), resolve)
    raise TypeError(f"not a space: {x!r}")


def first_moment(x: Space, resolve: Optional[Resolver] = None) -> ParamPoly:
    """Derivative in ``u = t^2`` of the Poincaré polynomial at ``u = 1``.

    For a space with a free multiplicative-group action this is the Euler
    characteristic of the quotient, since ``P(X) = (u - 1) P(X/G)``.
    """
    if isinstance(x, Point):
        return ParamPoly()
    if isinstance(x, Affine):
        return x.dim
    if isinstance(x, Torus):
        return ParamPoly.const(1 if x.rank == 1 else 0)
    if isinstance(x, Projective):
        return x.dim * (x.dim + 1) / 2
    if isinstance(x, Grassmannian):
        return _binomial_poly(x.m, x.k) * x.k * (x.m - x.k) / 2
    if isinstance(x, Flag12):
        return _binomial_poly(x.m, 2) * (2 * x.m - 3)
    if isinstance(x, (Product, Bundle)):
        a, b = (x.left, x.right) if isinstance(x, Product) else (x.base, x.fiber)
        return first_moment(a, resolve) * euler_char(b, resolve) + euler_char(a, resolve) * first_moment(b, resolve)
    if isinstance(x, Disjoint):
        return first_moment(x.left, resolve) + first_moment(x.right, resolve)
    if isinstance(x, Complement):
        return first_moment(x.outer, resolve) - first_moment(x.inner, resolve)
    if isinstance(x, Diagonal):
        return first_moment(x.base, resolve)
    if isinstance(x, PoincareSpace):
        total = Fraction(0)
        for mono, c in x.poincare.terms.items():
            e = dict(mono).get("t", 0)
            if e % 2:
                raise UnavailableInvariant("first moment needs a polynomial in t^2")
            total += c * (e // 2)
        return ParamPoly.const(total)
    if isinstance(x, ModuliDescriptor):
        return first_moment(_resolve(x, resolve), resolve)
    raise UnavailableInvariant(f"first moment of {render_space(x)} is not available")


def _numeric(dim: ParamPoly, what: str) -> int:
    if not dim.is_constant():
        raise SymbolicDimensionError(f"{what} has symbolic dimension {dim}; Poincaré polynomial needs a numeric value")
    value = dim.constant_value()
    if value.denominator != 1 or value < 0:
        raise ValueError(f"{what} needs a non-negative integer dimension, got {value}")
    return int(value)


def _u_sum(top: int) -> ParamPoly:
    return sum((U**i for i in range(top + 1)), ParamPoly())


def _gaussian_binomial(m: int, k: int) -> ParamPoly:
    if k < 0 or k > m:
        return ParamPoly()
    num = ParamPoly.const(1)
    den = ParamPoly.const(1)
    for i in range(k):
        num = num * (U ** (m - i) - 1)
        den = den * (U ** (i + 1) - 1)
    result = poly_divexact(num, den)
    assert not isinstance(result, InexactDivision)
    return result


def poincare_poly(x: Space, resolve: Optional[Resolver] = None) -> ParamRational:
    """Virtual Poincaré polynomial in ``t``."""
    return ParamRational(_poincare(x, resolve))


def _poincare(x: Space, resolve: Optional[Resolver]) -> ParamPoly:
    if isinstance(x, Point):
        return ParamPoly.const(1)
    if isinstance(x, Affine):
        return U ** _numeric(x.dim, "affine space")
    if isinstance(x, Torus):
        return (U - 1) ** x.rank
    if isinstance(x, Projective):
        return _u_sum(_numeric(x.dim, "projective space"))
    if isinstance(x, Grassmannian):
        return _gaussian_binomial(_numeric(x.m, "Grassmannian"), x.k)
    if isinstance(x, Flag12):
        return _gaussian_binomial(_numeric(x.m, "flag variety"), 2) * (1 + U)
    if isinstance(x, Product):
        return _poincare(x.left, resolve) * _poincare(x.right, resolve)
    if isinstance(x, Disjoint):
        return _poincare(x.left, resolve) + _poincare(x.right, resolve)
    if isinstance(x, Complement):
        return _poincare(x.outer, resolve) - _poincare(x.inner, resolve)
    if isinstance(x, Diagonal):
        return _poincare(x.base, resolve)
    if isinstance(x, DistinctPairs):
        p = _poincare(x.base, resolve)
        return (p * p + p.subs({"t": T**2})) / 2 - p
    if isinstance(x, Bundle):
        return _poincare(x.base, resolve) * _poincare(x.fiber, resolve)
    if isinstance(x, FreeQuotient):
        result = poly_divexact(_poincare(x.total, resolve), U - 1)
        if isinstance(result, InexactDivision):
            raise ValueError("free quotient: Poincaré polynomial not divisible by the torus class")
        return result
    if isinstance(x, PoincareSpace):
        return x.poincare
    if isinstance(x, EulerSpace):
        raise UnavailableInvariant(f"{x.label} is known only through its Euler characteristic")
    if isinstance(x, ModuliDescriptor):
        return _poincare(_resolve(x, resolve), resolve)
    raise TypeError(f"not a space: {x!r}")


PoincareSource = Union[Space, GroupExpr, ParamPoly, ParamRational]


def _as_poincare(x: PoincareSource) -> ParamPoly:
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, ParamRational):
        return x.as_poly()
    if isinstance(x, Space):
        return _poincare(x, None)
    return group_poincare(x)


def fibration_base(total: PoincareSource, fiber: PoincareSource) -> ParamPoly | InexactDivision:
    """Poincaré polynomial of the base of a fibration, via exact division."""
    fiber_poly = _as_poincare(fiber)
    if fiber_poly.is_zero():
        raise ZeroDivisionError("fiber has zero Poincaré polynomial")
    return poly_divexact(_as_poincare(total), fiber_poly)


def _fmt(p: ParamPoly, latex: bool) -> str:
    from .polys import format_poly

    return format_poly(p, latex)


def render_space(x: Space, latex: bool = False) -> str:
    """Plain-text or LaTeX rendering of a space expression."""
    r = lambda s: render_space(s, latex)  # noqa: E731
    if isinstance(x, Point):
        return "\\mathrm{pt}" if latex else "pt"
    if isinstance(x, Affine):
        return f"\\mathbb{{A}}^{{{_fmt(x.dim, latex)}}}" if latex else f"A^({_fmt(x.dim, latex)})"
    if isinstance(x, Torus):
        return f"\\mathbb{{G}}_m^{{{x.rank}}}" if latex else f"Gm^{x.rank}"
    if isinstance(x, Projective):
        return f"\\mathbb{{P}}^{{{_fmt(x.dim, latex)}}}" if latex else f"P^({_fmt(x.dim, latex)})"
    if isinstance(x, Grassmannian):
        return f"G({x.k},{_fmt(x.m, latex)})"
    if isinstance(x, Flag12):
        return f"F(1,2,{_fmt(x.m, latex)})"
    if isinstance(x, Product):
        return f"{r(x.left)}\\times {r(x.right)}" if latex else f"{r(x.left)} x {r(x.right)}"
    if isinstance(x, Disjoint):
        return f"({r(x.left)}\\sqcup {r(x.right)})" if latex else f"({r(x.left)} u {r(x.right)})"
    if isinstance(x, Complement):
        return f"({r(x.outer)}\\setminus {r(x.inner)})" if latex else f"({r(x.outer)} \\ {r(x.inner)})"
    if isinstance(x, Diagonal):
        return f"\\Delta_{{{r(x.base)}}}" if latex else f"Diag({r(x.base)})"
    if isinstance(x, DistinctPairs):
        return f"\\mathrm{{Sym}}^2_{{\\neq}}({r(x.base)})" if latex else f"Pairs({r(x.base)})"
    if isinstance(x, Bundle):
        return f"({r(x.fiber)}\\to {r(x.base)})" if latex else f"({r(x.fiber)} -> {r(x.base)})"
    if isinstance(x, FreeQuotient):
        return f"({r(x.total)})/\\mathbb{{G}}_m" if latex else f"({r(x.total)})/Gm"
    if isinstance(x, (PoincareSpace, EulerSpace)):
        return x.label
    if isinstance(x, ModuliDescriptor):
        return f"\\mathcal{{M}}_{{{x.tag}}}" if latex else f"M[{x.tag}]"
    raise TypeError(f"not a space: {x!r}")
