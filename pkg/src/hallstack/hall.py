"""Hall products of rank-one pair objects, epsilon elements and their invariants.

A product ``a * b`` parametrizes extensions ``0 -> E_a -> E -> E_b -> 0``, so it
reads ``Hom(E_b, E_a)`` and ``Ext^1(E_b, E_a)`` from the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classes import NumClass, OutsidePositiveCone, SheafClass, weak_stability
from .groups import (
    GL2,
    GM,
    GM2,
    FTable,
    GroupExpr,
    SemiDirect,
    TorusPow,
    TorusUnion,
    f_coefficient,
    group_dim,
    group_poincare,
)
from .motivic import (
    Bundle,
    Complement,
    Disjoint,
    DistinctPairs,
    FreeQuotient,
    PoincareSpace,
    Point,
    Projective,
    Space,
    Torus,
    fibration_base,
    off_diagonal,
    product,
    render_space,
)
from .oracle import GeometryOracle, RankTwoEntry
from .polys import InexactDivision, ParamPoly, format_poly, sign_of_power
from .stackfun import (
    ZERO,
    Convention,
    SFTerm,
    StackFunction,
    is_normal_form,
    is_virtually_indecomposable,
    normalize,
    render_sf,
    sf_scale,
    sf_sum,
    torus_decompose,
)
from .trace import DerivationTrace


class AssumptionViolation(ValueError):
    pass


class NotCharacteristic(ValueError):
    pass


class NotNormalized(ValueError):
    pass


class NotVirtuallyIndecomposable(ValueError):
    pass


@dataclass(frozen=True)
class HallElement:
    cls: NumClass
    sf: StackFunction


@dataclass(frozen=True)
class Invariant:
    value: ParamPoly
    class_label: NumClass

    def __str__(self) -> str:
        return format_poly(self.value)


@dataclass(frozen=True)
class Piece:
    """A labelled summand; labels name the stratum an epsilon piece comes from."""

    label: str
    sf: StackFunction


def _record(trace: Optional[DerivationTrace], operation: str, tag: str, before: str, after: StackFunction | str,
            assertions: tuple[str, ...] = (), before_latex: str = "", after_sf: Optional[StackFunction] = None) -> None:
    if trace is None:
        return
    if isinstance(after, StackFunction):
        trace.record(operation, tag, before, render_sf(after, show_reldim=True), assertions,
                     before_latex, render_sf(after, latex=True))
    else:
        trace.record(operation, tag, before, after, assertions, before_latex, after)


def characteristic_element(c: NumClass, g: GeometryOracle) -> HallElement:
    """The characteristic function ``[M_c/G_c]`` of the stable rank-one moduli."""
    if not g.has_moduli(c):
        return HallElement(c, ZERO)
    space, group = g.moduli_descriptor(c)
    return HallElement(c, StackFunction.single(space, group))


def _hom_group(h: ParamPoly, torus: int) -> GroupExpr:
    if not h.is_constant():
        raise AssumptionViolation(f"hom dimension {h} must be numeric")
    value = h.as_int()
    return TorusPow(torus) if value == 0 else SemiDirect(value, torus)


def _over(base: Space, fiber: Space) -> Space:
    return fiber if isinstance(base, Point) else Bundle(base, fiber)


def _nonsplit_locus(g: GeometryOracle, a: NumClass, b: NumClass, diagonal: bool, base: Space) -> Optional[Space]:
    override = g.nonsplit_locus(b, a, diagonal)
    if override is not None:
        return override
    e = g.ext1_dim(b, a, diagonal)
    if e.is_zero():
        return None
    return _over(base, Projective(e - 1))


def hall_product_parts(a: NumClass, b: NumClass, g: GeometryOracle) -> dict[str, StackFunction]:
    """Extension strata of ``delta_a * delta_b`` keyed by split/nonsplit and diagonal/off."""
    ma, ga = g.moduli_descriptor(a)
    mb, gb = g.moduli_descriptor(b)
    if ga != GM or gb != GM:
        raise AssumptionViolation("Hall products are computed for stable objects with stabilizer Gm")
    parts: dict[str, StackFunction] = {}
    if a != b:
        base = product(ma, mb)
        h = g.hom_dim(b, a, False)
        parts["split_off"] = StackFunction.single(base, _hom_group(h, 2))
        locus = _nonsplit_locus(g, a, b, False, base)
        parts["nonsplit_off"] = ZERO if locus is None else StackFunction.single(locus, _hom_group(h, 1))
        return parts
    h_diag = g.hom_dim(a, a, True)
    h_off = g.hom_dim(a, a, False)
    od = off_diagonal(ma)
    parts["split_diag"] = StackFunction.single(ma, _hom_group(h_diag, 2))
    parts["split_off"] = StackFunction.single(od, _hom_group(h_off, 2))
    locus = _nonsplit_locus(g, a, a, True, ma)
    parts["nonsplit_diag"] = ZERO if locus is None else StackFunction.single(locus, _hom_group(h_diag, 1))
    locus = _nonsplit_locus(g, a, a, False, od)
    parts["nonsplit_off"] = ZERO if locus is None else StackFunction.single(locus, _hom_group(h_off, 1))
    return parts


def hall_product(a: HallElement, b: HallElement, g: GeometryOracle) -> StackFunction:
    """Ringel-Hall product of two rank-one characteristic functions."""
    if a.sf.is_zero() or b.sf.is_zero():
        return ZERO
    for x in (a, b):
        if x.sf != characteristic_element(x.cls, g).sf:
            raise NotCharacteristic(f"only characteristic functions of stable rank-one moduli multiply; got {x.sf}")
    return sf_sum(hall_product_parts(a.cls, b.cls, g).values())


# Rank-two strata


def stratum_dims(entry: RankTwoEntry) -> dict[str, ParamPoly]:
    """Relative dimensions d1..d4 of the four stratum types."""
    default = None if entry.ambient is None else -1 - entry.ambient
    out = {}
    for key in ("d1", "d2", "d3", "d4"):
        value = entry.dims.get(key, default)
        if value is None:
            raise AssumptionViolation(f"class {entry.name} has neither {key} nor an ambient dimension")
        out[key] = value
    return out


def _label_dim(label: str) -> str:
    return "d" + label[3]


def _pair_label(kind: int, g: GeometryOracle, k: NumClass, l: NumClass) -> str:
    if k == l:
        return f"eps{kind}[half,half]"
    return f"eps{kind}[{g.name_of(k)},{g.name_of(l)}]"


def hall_pieces(beta: NumClass, g: GeometryOracle) -> list[Piece]:
    """Ordered Hall products of all decompositions, split into labelled strata."""
    pieces = []
    for k, l in g.decompositions(beta):
        parts = hall_product_parts(k, l, g)
        if k != l:
            pieces.append(Piece(_pair_label(1, g, k, l), parts["nonsplit_off"]))
            pieces.append(Piece(_pair_label(3, g, k, l), parts["split_off"]))
        else:
            pieces.append(Piece("eps1[half,half]", parts["nonsplit_off"]))
            pieces.append(Piece("eps2", parts["nonsplit_diag"]))
            pieces.append(Piece("eps3[half,half]", parts["split_off"]))
            pieces.append(Piece("eps4", parts["split_diag"]))
    return pieces


def _gl2_fiber_over_borel() -> ParamPoly:
    """``P(GL2) / P(A^1 x| Gm) / P(Gm)``: the fiber of pairs of lines over a flag."""
    step = fibration_base(GL2(), SemiDirect(1, 1))
    assert not isinstance(step, InexactDivision)
    result = fibration_base(step, TorusPow(1))
    assert not isinstance(result, InexactDivision)
    return result


def _gl2_fiber_over_torus_union() -> ParamPoly:
    """``(P(GL2) - P(torus union)) / P(Gm^2) / P(Gm)`` with the union read as two copies."""
    step = fibration_base(group_poincare(GL2()) - group_poincare(TorusUnion()), GM2)
    assert not isinstance(step, InexactDivision)
    result = fibration_base(step, GM)
    if isinstance(result, InexactDivision):
        raise ArithmeticError("torus-union fiber does not divide")
    return result


def generic_delta_pieces(beta: NumClass, g: GeometryOracle, table: FTable) -> list[Piece]:
    """Strata of the semistable stack built from rank-one pieces with no cross homs."""
    entry = g.rank_two_entry(beta)
    for k, l in g.decompositions(beta):
        h = g.hom_dim(l, k, False)
        if not h.is_zero():
            raise AssumptionViolation(
                f"generic strata need Hom({g.name_of(l)},{g.name_of(k)})=0 off the diagonal; supply explicit strata"
            )
    pieces: list[Piece] = []
    half = beta.halved()
    for k, l in g.decompositions(beta):
        parts = hall_product_parts(k, l, g)
        pieces.append(Piece(_pair_label(1, g, k, l), parts["nonsplit_off"]))
        if k != l:
            mk, _ = g.moduli_descriptor(k)
            ml, _ = g.moduli_descriptor(l)
            pieces.append(Piece(_pair_label(3, g, k, l), StackFunction.single(product(mk, ml), GM2, Fraction(1, 2))))
    if half is not None and g.has_moduli(half):
        m, _ = g.moduli_descriptor(half)
        w2 = f_coefficient(GL2(), GM2, table)
        w1 = f_coefficient(GL2(), GM, table)
        # self-extensions: [M2/GL2] with M2 a Gm-bundle over Q2
        base = _nonsplit_locus(g, half, half, True, m)
        if base is not None:
            q2 = Bundle(base, PoincareSpace("GL2/B", _gl2_fiber_over_borel()))
            m2 = Bundle(q2, Torus(1))
            pieces.append(Piece("eps2", StackFunction([SFTerm(ParamPoly.const(w2), q2, GM), SFTerm(ParamPoly.const(w1), m2, GM)])))
        # split extensions of distinct isomorphism classes: [M3/GL2]
        od = off_diagonal(m)
        a = Bundle(DistinctPairs(m), PoincareSpace("GL2/N(T)", _gl2_fiber_over_torus_union()))
        m3 = Disjoint(od, Bundle(a, Torus(1)))
        pieces.append(
            Piece(
                "eps3[half,half]",
                StackFunction([SFTerm(ParamPoly.const(w2), od, GM2), SFTerm(ParamPoly.const(w2), a, GM), SFTerm(ParamPoly.const(w1), m3, GM)]),
            )
        )
        pieces.append(Piece("eps4", StackFunction.single(m, GL2())))
    dims = stratum_dims(entry)
    return [Piece(p.label, p.sf.with_reldim(dims[_label_dim(p.label)])) for p in pieces]


def localize_torus_quotient(term: SFTerm, fixed: Space) -> StackFunction:
    """Split ``[X/Gm^2]`` into the fixed locus and the free quotient of its complement."""
    if term.group != GM2:
        raise ValueError("localization applies to quotients by the rank-2 torus")
    return StackFunction(
        [
            SFTerm(term.coeff, fixed, GM2, term.reldim, term.origin),
            SFTerm(term.coeff, FreeQuotient(Complement(term.space, fixed)), GM, term.reldim, term.origin),
        ]
    )


def _explicit_delta(entry: RankTwoEntry, g: GeometryOracle, table: FTable, trace: Optional[DerivationTrace]) -> StackFunction:
    rd = -1 - g.ambient_dim(entry.cls)
    raw = StackFunction(SFTerm(ParamPoly.const(s.coeff), s.space, s.group, rd) for s in entry.strata)
    _record(trace, "delta_ss_rank2", "strata.explicit", f"delta_ss{entry.cls}", raw,
            ("strata are disjoint and cover the semistable locus",))
    out: list[SFTerm] = []
    for spec in entry.strata:
        term = SFTerm(ParamPoly.const(spec.coeff), spec.space, spec.group, rd)
        if spec.fixed is None:
            out.append(term)
            continue
        decomposed = torus_decompose(term, table)
        _record(trace, "torus_decompose", "sf.torus-decompose", render_sf(StackFunction([term]), show_reldim=True), decomposed)
        for t in decomposed.terms:
            if t.group == GM2:
                local = localize_torus_quotient(t, spec.fixed)
                _record(trace, "localize_torus_quotient", "strata.localize", render_sf(StackFunction([t]), show_reldim=True), local,
                        (f"{render_space(spec.fixed)} is the fixed locus of the torus", "the quotient torus acts freely elsewhere"))
                out.extend(local.terms)
            else:
                out.append(t)
    return StackFunction(out)


def delta_ss_rank2(
    beta: NumClass,
    g: GeometryOracle,
    convention: Convention = Convention.PRINTED,
    trace: Optional[DerivationTrace] = None,
) -> HallElement:
    """Stack function of the semistable moduli of a rank-two class, stratum by stratum."""
    if beta.rank != 2:
        raise ValueError("delta_ss_rank2 needs a rank-2 class")
    entry = g.rank_two_entry(beta)
    _record(trace, "delta_ss_rank2", "strata.stable-locus", f"stable locus of {beta}", "0",
            ("every rank-2 object is strictly semistable",))
    if entry.strata:
        return HallElement(beta, _explicit_delta(entry, g, convention.f_table, trace))
    if not g.decompositions(beta):
        return HallElement(beta, ZERO)
    pieces = generic_delta_pieces(beta, g, convention.f_table)
    total = sf_sum(p.sf for p in pieces)
    _record(trace, "generic_delta_pieces", "strata.generic", f"delta_ss{beta}", total,
            tuple(f"stratum {p.label}" for p in pieces))
    return HallElement(beta, total)


def _hall_pieces_with_dims(beta: NumClass, g: GeometryOracle, explicit: bool) -> list[Piece]:
    entry = g.rank_two_entry(beta)
    if explicit:
        rd = -1 - g.ambient_dim(beta)
        return [Piece(p.label, p.sf.with_reldim(rd)) for p in hall_pieces(beta, g)]
    dims = stratum_dims(entry)
    return [Piece(p.label, p.sf.with_reldim(dims[_label_dim(p.label)])) for p in hall_pieces(beta, g)]


def epsilon_pieces(
    beta: NumClass,
    g: GeometryOracle,
    convention: Convention = Convention.PRINTED,
    trace: Optional[DerivationTrace] = None,
) -> list[Piece]:
    """The epsilon element split by stratum label; explicit strata give a single piece."""
    entry = g.rank_two_entry(beta)
    explicit = bool(entry.strata)
    delta = delta_ss_rank2(beta, g, convention, trace)
    if delta.sf.is_zero() and not g.decompositions(beta):
        return []
    halls = _hall_pieces_with_dims(beta, g, explicit)
    for k, l in g.decompositions(beta):
        prod = sf_sum(p.sf for p in _hall_pieces_with_dims(beta, g, explicit) if _piece_pair(p, g, k, l, beta))
        _record(trace, "hall_product", "hall.product", f"delta{k} * delta{l}", prod)
    if explicit:
        half_sum = sf_scale(Fraction(1, 2), sf_sum(p.sf for p in halls))
        eps = delta.sf - half_sum
        _record(trace, "epsilon_rank2", "epsilon.assemble", "delta_ss - 1/2 sum of ordered products", eps)
        return [Piece("total", eps)]
    deltas = generic_delta_pieces(beta, g, convention.f_table)
    labels = list(dict.fromkeys([p.label for p in deltas] + [p.label for p in halls]))
    out = []
    for label in labels:
        d = sf_sum(p.sf for p in deltas if p.label == label)
        h = sf_sum(p.sf for p in halls if p.label == label)
        eps = d - sf_scale(Fraction(1, 2), h)
        _record(trace, "epsilon_rank2", "epsilon.assemble", f"{label}: delta - 1/2 hall", eps)
        out.append(Piece(label, eps))
    return out


def _piece_pair(p: Piece, g: GeometryOracle, k: NumClass, l: NumClass, beta: NumClass) -> bool:
    if k == l:
        return p.label in ("eps1[half,half]", "eps2", "eps3[half,half]", "eps4")
    return p.label in (_pair_label(1, g, k, l), _pair_label(3, g, k, l))


def epsilon_rank2(
    beta: NumClass,
    g: GeometryOracle,
    convention: Convention = Convention.PRINTED,
    trace: Optional[DerivationTrace] = None,
) -> HallElement:
    """``delta_ss`` minus half the ordered sum of rank-one products."""
    return HallElement(beta, sf_sum(p.sf for p in epsilon_pieces(beta, g, convention, trace)))


def normalize_traced(
    f: StackFunction, convention: Convention, g: GeometryOracle, trace: Optional[DerivationTrace]
) -> StackFunction:
    def record(op: str, before: StackFunction, after: StackFunction) -> None:
        tag = "sf.torus-decompose" if op == "torus_decompose" else "sf.chi-relation"
        assertions = () if op == "torus_decompose" else ("each stratum is a product with its stacky point",)
        _record(trace, op, tag, render_sf(before, show_reldim=True), after, assertions, render_sf(before, latex=True))

    return normalize(f, convention, g.resolve, record if trace is not None else None)


def behrend_weight(group: GroupExpr) -> int:
    """Weight of the stacky point ``[pt/G]``: ``(-1)^dim G``."""
    return -1 if group_dim(group) % 2 else 1


def lie_morphism_psi(e: HallElement, convention: Convention = Convention.PRINTED) -> Invariant:
    """Numerical invariant of a normalized, virtually indecomposable element."""
    if not is_normal_form(e.sf, convention):
        raise NotNormalized(f"not in normal form: {e.sf}")
    if not is_virtually_indecomposable(e.sf, convention):
        raise NotVirtuallyIndecomposable(f"support is not virtually indecomposable: {e.sf}")
    value = ParamPoly()
    for t in e.sf.terms:
        if t.reldim is None:
            raise ValueError(f"term {t} carries no relative dimension")
        value = value + t.coeff * (sign_of_power(t.reldim) * behrend_weight(t.group))
    return Invariant(value, e.cls)


def epsilon_strata_psi(
    beta: NumClass,
    g: GeometryOracle,
    convention: Convention = Convention.PRINTED,
    trace: Optional[DerivationTrace] = None,
) -> list[tuple[str, Invariant]]:
    """Invariant of each epsilon stratum; they sum to the full invariant."""
    out = []
    for piece in epsilon_pieces(beta, g, convention, trace):
        normal = normalize_traced(piece.sf, convention, g, trace)
        inv = lie_morphism_psi(HallElement(beta, normal), convention)
        if trace is not None:
            trace.record("lie_morphism_psi", "psi.behrend", f"{piece.label}: {render_sf(normal, show_reldim=True)}",
                         format_poly(inv.value), ("Behrend weight of [pt/Gm^k] is (-1)^k",),
                         render_sf(normal, latex=True), format_poly(inv.value, latex=True))
        out.append((piece.label, inv))
    return out


__all__ = [
    "AssumptionViolation",
    "HallElement",
    "Invariant",
    "NotCharacteristic",
    "NotNormalized",
    "NotVirtuallyIndecomposable",
    "NumClass",
    "OutsidePositiveCone",
    "Piece",
    "SheafClass",
    "behrend_weight",
    "characteristic_element",
    "delta_ss_rank2",
    "epsilon_pieces",
    "epsilon_rank2",
    "epsilon_strata_psi",
    "generic_delta_pieces",
    "hall_pieces",
    "hall_product",
    "hall_product_parts",
    "lie_morphism_psi",
    "localize_torus_quotient",
    "normalize_traced",
    "stratum_dims",
    "weak_stability",
]
