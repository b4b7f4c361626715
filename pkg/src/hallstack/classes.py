"""Numerical classes of pair objects: a sheaf class plus the rank of the vector space."""

from __future__ import annotations

from dataclasses import dataclass

from .polys import ParamPoly, format_poly


class OutsidePositiveCone(ValueError):
    pass


@dataclass(frozen=True)
class SheafClass:
    """A curve-supported sheaf class: degree along the curve and Euler characteristic."""

    degree: int
    chi: ParamPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", ParamPoly.coerce(self.chi))

    def __add__(self, other: SheafClass) -> SheafClass:
        return SheafClass(self.degree + other.degree, self.chi + other.chi)

    def is_zero(self) -> bool:
        return self.degree == 0 and self.chi.is_zero()

    def is_effective(self) -> bool:
        if self.degree > 0:
            return True
        if self.degree < 0:
            return False
        return self.chi.is_constant() and self.chi.constant_value() > 0

    def __str__(self) -> str:
        return f"({self.degree},{format_poly(self.chi)})"


@dataclass(frozen=True)
class NumClass:
    degree: int
    chi: ParamPoly
    rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", ParamPoly.coerce(self.chi))

    @property
    def sheaf(self) -> SheafClass:
        return SheafClass(self.degree, self.chi)

    def __add__(self, other: NumClass) -> NumClass:
        return NumClass(self.degree + other.degree, self.chi + other.chi, self.rank + other.rank)

    def in_positive_cone(self) -> bool:
        if self.rank < 0:
            return False
        if self.sheaf.is_zero():
            return self.rank > 0
        return self.sheaf.is_effective()

    def halved(self) -> NumClass | None:
        """The class ``c`` with ``2c = self``, when it exists."""
        if self.degree % 2 or self.rank % 2:
            return None
        return NumClass(self.degree // 2, self.chi / 2, self.rank // 2)

    def __str__(self) -> str:
        return f"({self.degree},{format_poly(self.chi)},{self.rank})"


def weak_stability(c: NumClass) -> int:
    """The two-valued stability: 0 on pure sheaves, 1 once a vector space is present."""
    if not c.in_positive_cone():
        raise OutsidePositiveCone(f"class {c} is not in the positive cone")
    return 0 if c.rank == 0 else 1
