"""Stack functions: rational combinations of quotient stacks ``[X/G]``.

A term carries a relative-dimension marker fixed when the term is created; it
is needed later for the sign of the Behrend weighting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .groups import (
    GM,
    STANDARD_F_TABLE,
    TORUS_F_TABLE,
    FTable,
    GroupExpr,
    SemiDirect,
    decomposition_targets,
    is_torus,
    render_group,
)
from .motivic import Point, Resolver, Space, euler_char, render_space
from .polys import ParamPoly, format_poly


class Convention(enum.Enum):
    """How rank-one unipotent extensions of the torus are treated.

    ``PRINTED`` keeps ``[pt/(A^d x| Gm)]`` as a basis element weighted by
    ``(-1)^dim``. ``TORUS`` decomposes it onto its torus with weight one.
    """

    PRINTED = "printed"
    TORUS = "torus"

    @property
    def f_table(self) -> FTable:
        return STANDARD_F_TABLE if self is Convention.PRINTED else TORUS_F_TABLE

    def is_terminal(self, g: GroupExpr) -> bool:
        if is_torus(g):
            return True
        return self is Convention.PRINTED and isinstance(g, SemiDirect) and g.torus_rank == 1


@dataclass(frozen=True)
class SFTerm:
    coeff: ParamPoly
    space: Space
    group: GroupExpr
    reldim: Optional[ParamPoly] = None
    origin: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", ParamPoly.coerce(self.coeff))
        if self.reldim is not None:
            object.__setattr__(self, "reldim", ParamPoly.coerce(self.reldim))

    @property
    def key(self) -> tuple[Space, GroupExpr, Optional[ParamPoly]]:
        return (self.space, self.group, self.reldim)

    def with_coeff(self, coeff: ParamPoly) -> SFTerm:
        return SFTerm(coeff, self.space, self.group, self.reldim, self.origin)


def _merge_origins(a: str, b: str) -> str:
    parts = [p for p in (a.split(",") + b.split(",")) if p]
    return ",".join(dict.fromkeys(parts))


class StackFunction:
    """Finite combination of terms with like terms combined."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[SFTerm] = ()) -> None:
        combined: dict[tuple, SFTerm] = {}
        for term in terms:
            if term.coeff.is_zero():
                continue
            prior = combined.get(term.key)
            if prior is None:
                combined[term.key] = term
            else:
                combined[term.key] = SFTerm(
                    prior.coeff + term.coeff, term.space, term.group, term.reldim, _merge_origins(prior.origin, term.origin)
                )
        self._terms = tuple(t for t in combined.values() if not t.coeff.is_zero())

    @classmethod
    def single(
        cls,
        space: Space,
        group: GroupExpr,
        coeff: ParamPoly | int | Fraction = 1,
        reldim: Optional[ParamPoly | int] = None,
        origin: str = "",
    ) -> StackFunction:
        return cls([SFTerm(ParamPoly.coerce(coeff), space, group, None if reldim is None else ParamPoly.coerce(reldim), origin)])

    @property
    def terms(self) -> tuple[SFTerm, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def coefficients(self) -> dict[tuple, ParamPoly]:
        return {t.key: t.coeff for t in self._terms}

    def __add__(self, other: StackFunction) -> StackFunction:
        return StackFunction(self._terms + other._terms)

    def __neg__(self) -> StackFunction:
        return sf_scale(-1, self)

    def __sub__(self, other: StackFunction) -> StackFunction:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StackFunction):
            return NotImplemented
        return self.coefficients() == other.coefficients()

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients().items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def with_reldim(self, reldim: ParamPoly | int) -> StackFunction:
        rd = ParamPoly.coerce(reldim)
        return StackFunction(SFTerm(t.coeff, t.space, t.group, rd, t.origin) for t in self._terms)

    def with_origin(self, origin: str) -> StackFunction:
        return StackFunction(SFTerm(t.coeff, t.space, t.group, t.reldim, origin) for t in self._terms)

    def __repr__(self) -> str:
        return f"StackFunction({render_sf(self)!r})"

    def __str__(self) -> str:
        return render_sf(self)


ZERO = StackFunction()


def sf_add(a: StackFunction, b: StackFunction) -> StackFunction:
    return a + b


def sf_scale(c: ParamPoly | int | Fraction, a: StackFunction) -> StackFunction:
    factor = ParamPoly.coerce(c)
    return StackFunction(t.with_coeff(t.coeff * factor) for t in a.terms)


def sf_sum(parts: Iterable[StackFunction]) -> StackFunction:
    terms: list[SFTerm] = []
    for part in parts:
        terms.extend(part.terms)
    return StackFunction(terms)


def apply_chi_relation(term: SFTerm, resolve: Optional[Resolver] = None) -> StackFunction:
    """``[X/G] -> chi(X) [pt/G]`` for a product of ``X`` with a stacky point."""
    chi = euler_char(term.space, resolve)
    return StackFunction([SFTerm(term.coeff * chi, Point(), term.group, term.reldim, term.origin)])


def torus_decompose(term: SFTerm, table: FTable = STANDARD_F_TABLE) -> StackFunction:
    """Rewrite ``[X/G]`` as a weighted sum of quotients by subtori."""
    return StackFunction(
        SFTerm(term.coeff * w, term.space, q, term.reldim, term.origin) for q, w in decomposition_targets(term.group, table)
    )


class IntegrandShapeError(ValueError):
    pass


def motivic_integrate(base: Space, integrand: StackFunction, fiber_chi: Optional[ParamPoly] = None) -> StackFunction:
    """Integrate a pointwise-constant integrand ``[F/G]`` over ``base``.

    A point integrand gives ``[base/G]``; a fiber ``F`` contributes the factor
    ``chi(F)`` (or ``fiber_chi`` when given).
    """
    if len(integrand) != 1:
        raise IntegrandShapeError("integrand must be a single term [F/G] of constant shape")
    (term,) = integrand.terms
    if isinstance(term.space, Point) and fiber_chi is None:
        factor = ParamPoly.const(1)
    else:
        factor = fiber_chi if fiber_chi is not None else euler_char(term.space)
    return StackFunction([SFTerm(term.coeff * factor, base, term.group, term.reldim, term.origin)])


Recorder = Callable[[str, StackFunction, StackFunction], None]


def _decompose_pass(f: StackFunction, convention: Convention) -> StackFunction:
    out: list[SFTerm] = []
    for t in f.terms:
        if convention.is_terminal(t.group):
            out.append(t)
        else:
            out.extend(torus_decompose(t, convention.f_table).terms)
    return StackFunction(out)


def _chi_pass(f: StackFunction, resolve: Optional[Resolver]) -> StackFunction:
    out: list[SFTerm] = []
    for t in f.terms:
        out.extend([t] if isinstance(t.space, Point) else apply_chi_relation(t, resolve).terms)
    return StackFunction(out)


def normalize(
    f: StackFunction,
    convention: Convention = Convention.PRINTED,
    resolve: Optional[Resolver] = None,
    record: Optional[Recorder] = None,
) -> StackFunction:
    """Fixpoint of torus decomposition, the chi relation and like-term combination."""
    current = StackFunction(f.terms)
    while True:
        decomposed = _decompose_pass(current, convention)
        if record is not None and decomposed != current:
            record("torus_decompose", current, decomposed)
        collapsed = _chi_pass(decomposed, resolve)
        if record is not None and collapsed != decomposed:
            record("apply_chi_relation", decomposed, collapsed)
        if collapsed == current:
            return collapsed
        current = collapsed


def is_normal_form(f: StackFunction, convention: Convention = Convention.PRINTED) -> bool:
    return all(isinstance(t.space, Point) and convention.is_terminal(t.group) for t in f.terms)


def is_virtually_indecomposable(f: StackFunction, convention: Convention = Convention.PRINTED) -> bool:
    """Every term sits on a stabilizer with one-dimensional torus."""
    for t in f.terms:
        if t.group == GM:
            continue
        if convention is Convention.PRINTED and isinstance(t.group, SemiDirect) and t.group.torus_rank == 1:
            continue
        return False
    return True


def _format_coeff(c: ParamPoly, latex: bool) -> tuple[str, str]:
    """Return (sign, magnitude text) where magnitude is empty for 1."""
    if c.is_constant():
        v = c.constant_value()
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        if mag == 1:
            return sign, ""
        if latex and mag.denominator != 1:
            return sign, f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        return sign, str(mag) + ("" if latex else "*")
    if len(c.terms) == 1:
        (mono, v), = c.terms.items()
        if v < 0:
            return "-", _format_coeff(-c, latex)[1] or ""
        body = format_poly(c, latex)
        return "+", body + ("" if latex else "*")
    body = format_poly(c, latex)
    return "+", f"({body})" + ("" if latex else "*")


def render_term(t: SFTerm, latex: bool = False, show_reldim: bool = False) -> tuple[str, str]:
    sign, mag = _format_coeff(t.coeff, latex)
    if latex:
        stack = f"\\left[{render_space(t.space, True)}/{render_group(t.group, True)}\\right]"
        body = f"{mag}\\,{stack}" if mag else stack
    else:
        body = f"{mag}[{render_space(t.space)}/{render_group(t.group)}]"
    if show_reldim and t.reldim is not None:
        body += f"{{rd={format_poly(t.reldim, latex)}}}"
    return sign, body


def render_sf(f: StackFunction, latex: bool = False, show_reldim: bool = False) -> str:
    """Render as ``c*[X/G] + ...`` in plain text or LaTeX."""
    if f.is_zero():
        return "0"
    pieces = []
    for i, t in enumerate(f.terms):
        sign, body = render_term(t, latex, show_reldim)
        if i == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


__all__ = [
    "Convention",
    "SFTerm",
    "StackFunction",
    "ZERO",
    "sf_add",
    "sf_scale",
    "sf_sum",
    "apply_chi_relation",
    "torus_decompose",
    "motivic_integrate",
    "normalize",
    "is_normal_form",
    "is_virtually_indecomposable",
    "render_sf",
    "render_term",
]
