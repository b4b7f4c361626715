"""Stabilizer groups, their Poincaré polynomials and torus decomposition weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .polys import T, ParamPoly

_GM = T**2 - 1  # P_t of the multiplicative group


@dataclass(frozen=True)
class TorusPow:
    """The torus of rank ``rank``."""

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("torus rank must be non-negative")


@dataclass(frozen=True)
class GL2:
    """The general linear group of 2x2 matrices."""


@dataclass(frozen=True)
class SemiDirect:
    """Affine space of dimension ``unipotent_dim`` extended by a torus of ``torus_rank``."""

    unipotent_dim: int
    torus_rank: int

    def __post_init__(self) -> None:
        if self.unipotent_dim < 0 or self.torus_rank < 0:
            raise ValueError("dimensions must be non-negative")


@dataclass(frozen=True)
class TorusUnion:
    """Diagonal together with anti-diagonal invertible 2x2 matrices."""


GroupExpr = Union[TorusPow, GL2, SemiDirect, TorusUnion]

GM = TorusPow(1)
GM2 = TorusPow(2)


def group_dim(g: GroupExpr) -> int:
    if isinstance(g, TorusPow):
        return g.rank
    if isinstance(g, GL2):
        return 4
    if isinstance(g, SemiDirect):
        return g.unipotent_dim + g.torus_rank
    if isinstance(g, TorusUnion):
        return 2
    raise TypeError(f"not a group: {g!r}")


def torus_rank(g: GroupExpr) -> int:
    """Rank of a maximal torus."""
    if isinstance(g, TorusPow):
        return g.rank
    if isinstance(g, (GL2, TorusUnion)):
        return 2
    if isinstance(g, SemiDirect):
        return g.torus_rank
    raise TypeError(f"not a group: {g!r}")


def is_torus(g: GroupExpr) -> bool:
    return isinstance(g, TorusPow)


def group_poincare(g: GroupExpr) -> ParamPoly:
    """Virtual Poincaré polynomial of the underlying variety."""
    if isinstance(g, TorusPow):
        return _GM**g.rank
    if isinstance(g, GL2):
        return (T**4 - 1) * (T**2 - 1) * T**2
    if isinstance(g, SemiDirect):
        return T ** (2 * g.unipotent_dim) * _GM**g.torus_rank
    if isinstance(g, TorusUnion):
        # Two disjoint copies of the rank-2 torus.
        return 2 * _GM**2
    raise TypeError(f"not a group: {g!r}")


def torus_union_single_copy_poincare() -> ParamPoly:
    """The class subtracted once when the union is read as a single torus."""
    return _GM**2


def render_group(g: GroupExpr, latex: bool = False) -> str:
    gm = "\\mathbb{G}_m" if latex else "Gm"
    if isinstance(g, TorusPow):
        if g.rank == 0:
            return "1"
        if g.rank == 1:
            return gm
        return f"{gm}^{{{g.rank}}}" if latex else f"{gm}^{g.rank}"
    if isinstance(g, GL2):
        return "\\mathrm{GL}_2" if latex else "GL2"
    if isinstance(g, SemiDirect):
        torus = render_group(TorusPow(g.torus_rank), latex)
        if latex:
            affine = f"\\mathbb{{A}}^{{{g.unipotent_dim}}}"
            return f"{affine}\\rtimes {torus}"
        return f"A^{g.unipotent_dim}x|{torus}"
    if isinstance(g, TorusUnion):
        return "\\mathbb{G}_m^2\\cup(\\mathbb{G}_m^2)^*" if latex else "Gm^2u(Gm^2)*"
    raise TypeError(f"not a group: {g!r}")


class MissingFCoefficient(KeyError):
    """The torus decomposition reached a pair that has no tabulated weight."""

    def __init__(self, g: GroupExpr, q: GroupExpr | None = None) -> None:
        target = "" if q is None else f" -> {render_group(q)}"
        super().__init__(f"no decomposition weight for {render_group(g)}{target}")
        self.group = g
        self.target = q


class FTable:
    """Decomposition weights of a group onto subtori of its maximal torus.

    Lookups of absent pairs raise; there is no default value.
    """

    def __init__(self, entries: Mapping[tuple[GroupExpr, GroupExpr], Fraction | int]) -> None:
        self._entries = {key: Fraction(value) for key, value in entries.items()}
        for g, q in self._entries:
            if not is_torus(q):
                raise ValueError(f"decomposition target {render_group(q)} is not a torus")
            if q.rank > torus_rank(g):
                raise ValueError("target rank exceeds the torus rank")

    def items(self):
        return self._entries.items()

    def pairs(self) -> frozenset[tuple[GroupExpr, GroupExpr]]:
        return frozenset(self._entries)

    def lookup(self, g: GroupExpr, q: GroupExpr) -> Fraction:
        try:
            return self._entries[(g, q)]
        except KeyError:
            raise MissingFCoefficient(g, q) from None

    def domain(self) -> frozenset[GroupExpr]:
        return frozenset(g for g, _ in self._entries)

    def with_entries(self, extra: Mapping[tuple[GroupExpr, GroupExpr], Fraction | int]) -> FTable:
        merged = dict(self._entries)
        merged.update({k: Fraction(v) for k, v in extra.items()})
        return FTable(merged)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FTable) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))


# The weights used for the general linear group and the Borel-type group.
STANDARD_F_TABLE = FTable(
    {
        (GL2(), GM2): Fraction(1, 2),
        (GL2(), GM): Fraction(-3, 4),
        (SemiDirect(1, 2), GM2): Fraction(1),
        (SemiDirect(1, 2), GM): Fraction(-1),
    }
)

# Adds the rank-one unipotent extension, whose only subtorus is its torus.
TORUS_F_TABLE = STANDARD_F_TABLE.with_entries({(SemiDirect(1, 1), GM): Fraction(1)})


def f_coefficient(g: GroupExpr, q: GroupExpr, table: FTable = STANDARD_F_TABLE) -> Fraction:
    return table.lookup(g, q)


def decomposition_targets(g: GroupExpr, table: FTable = STANDARD_F_TABLE) -> list[tuple[GroupExpr, Fraction]]:
    """Subtori with weights, ordered by decreasing rank; tori map to themselves."""
    if is_torus(g):
        return [(g, Fraction(1))]
    targets = [(q, w) for (h, q), w in table.items() if h == g]
    if not targets:
        raise MissingFCoefficient(g)
    return sorted(targets, key=lambda item: -item[0].rank)
