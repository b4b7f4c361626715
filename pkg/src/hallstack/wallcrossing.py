"""Closed-form wall-crossing sums over ordered decompositions of a sheaf class."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Optional

from .classes import NumClass, SheafClass
from .hall import Invariant
from .oracle import GeometryOracle, pairing_value
from .polys import ParamPoly, sign_of_power
from .trace import DerivationTrace


def ordered_decompositions(target: SheafClass, pieces: list[SheafClass]) -> Iterator[tuple[SheafClass, ...]]:
    """Sequences of populated classes summing to ``target``, each of positive degree."""
    if target.degree == 0:
        if target.chi.is_zero():
            yield ()
        return
    for p in pieces:
        if p.degree <= 0 or p.degree > target.degree:
            continue
        rest = SheafClass(target.degree - p.degree, target.chi - p.chi)
        for tail in ordered_decompositions(rest, pieces):
            yield (p,) + tail


def _pair(g: GeometryOracle, prefix: SheafClass, rank: int, piece: SheafClass) -> ParamPoly:
    """The pairing of ``(prefix, rank)`` with the sheaf ``(piece, 0)``."""
    return pairing_value(g.twist, NumClass(prefix.degree, prefix.chi, rank), NumClass(piece.degree, piece.chi, 0))


def _prefix_pairings(g: GeometryOracle, seq: tuple[SheafClass, ...], rank: int) -> list[ParamPoly]:
    out = []
    prefix = SheafClass(0, ParamPoly())
    for piece in seq:
        out.append(_pair(g, prefix, rank, piece))
        prefix = prefix + piece
    return out


def _sign_exponent(g: GeometryOracle, seq: tuple[SheafClass, ...], rank: int, pairings: list[ParamPoly]) -> ParamPoly:
    lead = _pair(g, SheafClass(0, ParamPoly()), rank, seq[0])
    return lead + sum(pairings, ParamPoly())


def composition_term(g: GeometryOracle, seq: tuple[SheafClass, ...], rank: int) -> ParamPoly:
    """``(1/l!) prod_i DT_i * pairing_i * (-1)^S`` with the sign inside the product."""
    pairings = _prefix_pairings(g, seq, rank)
    sign = sign_of_power(_sign_exponent(g, seq, rank, pairings))
    value = ParamPoly.const(Fraction(1, factorial(len(seq))))
    for piece, pairing in zip(seq, pairings):
        value = value * pairing * (g.dt_value(piece) * sign)
    return value


def _target(beta: NumClass | SheafClass) -> SheafClass:
    return beta.sheaf if isinstance(beta, NumClass) else beta


def wallcrossing_terms(beta: NumClass | SheafClass, g: GeometryOracle, rank: int = 2) -> dict[int, ParamPoly]:
    """Unweighted sums of composition terms grouped by the number of pieces."""
    terms: dict[int, ParamPoly] = {}
    for seq in ordered_decompositions(_target(beta), g.populated_sheaf_classes()):
        terms[len(seq)] = terms.get(len(seq), ParamPoly()) + composition_term(g, seq, rank)
    return terms


def _label(beta: NumClass | SheafClass, rank: int) -> NumClass:
    s = _target(beta)
    return NumClass(s.degree, s.chi, rank)


def wallcrossing_rank2(
    beta: NumClass | SheafClass, g: GeometryOracle, trace: Optional[DerivationTrace] = None
) -> Invariant:
    """The rank-two sum with leading weight ``-1/4``."""
    total = sum(wallcrossing_terms(beta, g, 2).values(), ParamPoly()) * Fraction(-1, 4)
    if trace is not None:
        trace.record("wallcrossing_rank2", "wallcrossing.rank2", f"class {_target(beta)}", str(total))
    return Invariant(total, _label(beta, 2))


def wallcrossing_general(
    beta: NumClass | SheafClass, rank: int, g: GeometryOracle, trace: Optional[DerivationTrace] = None
) -> Invariant:
    """The conjectured higher-rank frozen-triple count ``(-1)^(r^2+1) / r^2 * sum``."""
    if rank < 1:
        raise ValueError("rank must be at least one")
    sign = -1 if (rank * rank + 1) % 2 else 1
    total = sum(wallcrossing_terms(beta, g, rank).values(), ParamPoly()) * Fraction(sign, rank * rank)
    if trace is not None:
        trace.record("wallcrossing_general", "wallcrossing.general", f"class {_target(beta)}, rank {rank}", str(total))
    return Invariant(total, _label(beta, rank))


def semistable_from_frozen(frozen: Invariant, rank: int) -> Invariant:
    """Undo the ``(-1)^(r^2)`` relating frozen triples to semistable pair objects."""
    return Invariant(frozen.value * (1 if rank % 2 == 0 else -1), frozen.class_label)


def joyce_song_chi(half: NumClass | SheafClass, g: GeometryOracle, trace: Optional[DerivationTrace] = None) -> ParamPoly:
    """Euler characteristic of rank-one stable pair moduli, as a wall-crossing sum.

    Each factor is ``DT_i * (-pairing_i)`` at rank one; the sign ``(-1)^S`` is
    applied once per composition.
    """
    total = ParamPoly()
    for seq in ordered_decompositions(_target(half), g.populated_sheaf_classes()):
        pairings = _prefix_pairings(g, seq, 1)
        sign = sign_of_power(_sign_exponent(g, seq, 1, pairings))
        value = ParamPoly.const(Fraction(sign, factorial(len(seq))))
        for piece, pairing in zip(seq, pairings):
            value = value * (-pairing) * g.dt_value(piece)
        total = total + value
    if trace is not None:
        trace.record("joyce_song_chi", "wallcrossing.half-class-chi", f"class {_target(half)}", str(total))
    return total


def half_class_sum_rank_two_pairing(half: NumClass | SheafClass, g: GeometryOracle) -> ParamPoly:
    """The rank-two variant carrying an extra leading pairing factor, reported for comparison."""
    total = ParamPoly()
    for seq in ordered_decompositions(_target(half), g.populated_sheaf_classes()):
        lead = _pair(g, SheafClass(0, ParamPoly()), 2, seq[0])
        total = total + lead * composition_term(g, seq, 2)
    return total


__all__ = [
    "composition_term",
    "half_class_sum_rank_two_pairing",
    "joyce_song_chi",
    "ordered_decompositions",
    "semistable_from_frozen",
    "wallcrossing_general",
    "wallcrossing_rank2",
    "wallcrossing_terms",
]
