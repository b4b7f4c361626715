"""End-to-end drivers: stratified computation, closed form and the comparator."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .classes import NumClass
from .hall import Invariant, epsilon_strata_psi, hall_product_parts, stratum_dims
from .motivic import euler_char
from .oracle import GeometryOracle, MissingOracleEntry
from .polys import Parity, ParamPoly, format_poly, parity_of, sign_of_power
from .stackfun import Convention
from .trace import DerivationTrace
from .wallcrossing import joyce_song_chi, semistable_from_frozen, wallcrossing_general, wallcrossing_rank2


class PipelineError(RuntimeError):
    """A failure inside a pipeline run, carrying the trace recorded so far."""

    def __init__(self, message: str, trace: DerivationTrace) -> None:
        tag = trace.last_tag()
        super().__init__(message if tag is None else f"{message} (after step <{tag}>)")
        self.trace = trace
        self.tag = tag


class MissingStratumData(LookupError):
    pass


@dataclass(frozen=True)
class OracleIntegrals:
    """Stratum integrals and relative dimensions entering the closed form."""

    one: dict[tuple[NumClass, NumClass], ParamPoly]
    two: Optional[ParamPoly]
    chi_half: Optional[ParamPoly]
    d1: ParamPoly
    d2: Optional[ParamPoly]
    d4: Optional[ParamPoly]


def integrals_from_oracle(beta: NumClass, g: GeometryOracle) -> OracleIntegrals:
    """Declared integrals when present, otherwise Euler characteristics of the extension loci."""
    entry = g.rank_two_entry(beta)
    dims = stratum_dims(entry)
    half = beta.halved()
    has_half = half is not None and g.has_moduli(half)
    declared = entry.integrals_one or entry.integral_two is not None or entry.chi_half is not None
    if declared:
        return OracleIntegrals(
            dict(entry.integrals_one),
            entry.integral_two,
            entry.chi_half,
            dims["d1"],
            dims["d2"] if entry.integral_two is not None else None,
            dims["d4"] if entry.chi_half is not None else None,
        )
    if entry.strata:
        raise MissingStratumData(f"class {entry.name} has explicit strata but no declared integrals")
    one: dict[tuple[NumClass, NumClass], ParamPoly] = {}
    two = chi_half = None
    for k, l in g.decompositions(beta):
        parts = hall_product_parts(k, l, g)
        one[(k, l)] = sum((t.coeff * euler_char(t.space, g.resolve) for t in parts["nonsplit_off"].terms), ParamPoly())
        if k == l:
            two = sum((t.coeff * euler_char(t.space, g.resolve) for t in parts["nonsplit_diag"].terms), ParamPoly())
    if has_half:
        m, _ = g.moduli_descriptor(half)
        chi_half = euler_char(m, g.resolve)
        if two is None:
            two = ParamPoly()
    return OracleIntegrals(
        one, two, chi_half, dims["d1"], dims["d2"] if has_half else None, dims["d4"] if has_half else None
    )


def self_extension_weight(convention: Convention) -> Fraction:
    """Coefficient of the self-extension integral in the closed form."""
    return Fraction(3, 2) if convention is Convention.PRINTED else Fraction(1, 2)


def compute_formula(
    beta: NumClass,
    integrals: OracleIntegrals,
    g: GeometryOracle,
    convention: Convention = Convention.PRINTED,
    chi_half_from_wallcrossing: bool = False,
    trace: Optional[DerivationTrace] = None,
) -> Invariant:
    """Closed form in the stratum integrals with signs from the relative dimensions."""
    value = ParamPoly()
    # Zero integrals contribute nothing, whatever the parity of their exponent.
    for integral in integrals.one.values():
        if integral.is_zero():
            continue
        value = value + integral * (Fraction(sign_of_power(integrals.d1 + 1), 2))
    if integrals.two is not None and not integrals.two.is_zero():
        if integrals.d2 is None:
            raise MissingStratumData("self-extension integral given without d2")
        value = value + integrals.two * (self_extension_weight(convention) * sign_of_power(integrals.d2 + 1))
    chi_half = integrals.chi_half
    if chi_half_from_wallcrossing and chi_half is not None:
        half = beta.halved()
        assert half is not None
        chi_half = joyce_song_chi(half, g, trace)
    if chi_half is not None and not chi_half.is_zero():
        if integrals.d4 is None:
            raise MissingStratumData("half-class Euler characteristic given without d4")
        value = value + chi_half * Fraction(sign_of_power(integrals.d4), 4)
    if trace is not None:
        trace.record("compute_formula", "formula.closed-form", f"integrals for {beta}", format_poly(value))
    return Invariant(value, beta)


def compute_direct(
    beta: NumClass, g: GeometryOracle, convention: Convention = Convention.PRINTED
) -> tuple[Invariant, DerivationTrace]:
    """Strata, Hall products, epsilon, normalization and the invariant map, with a trace."""
    trace = DerivationTrace()
    try:
        pieces = epsilon_strata_psi(beta, g, convention, trace)
    except Exception as exc:
        raise PipelineError(f"{type(exc).__name__}: {exc}", trace) from exc
    value = sum((inv.value for _, inv in pieces), ParamPoly())
    return Invariant(value, beta), trace


@dataclass(frozen=True)
class Verdict:
    left: str
    right: str
    status: str  # "agree", "disagree" or "unavailable"
    difference: Optional[ParamPoly] = None

    def __str__(self) -> str:
        tail = "" if self.difference is None else f" (difference {format_poly(self.difference)})"
        return f"{self.left} vs {self.right}: {self.status}{tail}"


@dataclass
class ConsistencyReport:
    beta: NumClass
    values: dict[str, ParamPoly] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def verdict(self, left: str, right: str) -> Verdict:
        for v in self.verdicts:
            if (v.left, v.right) == (left, right):
                return v
        raise KeyError((left, right))

    def render(self) -> str:
        lines = [f"class {self.beta}"]
        for name in sorted(set(self.values) | set(self.errors)):
            shown = format_poly(self.values[name]) if name in self.values else f"unavailable: {self.errors[name]}"
            lines.append(f"  {name}: {shown}")
        lines.extend(f"  {v}" for v in self.verdicts)
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def _attempt(report: ConsistencyReport, name: str, run: Callable[[], ParamPoly]) -> None:
    try:
        report.values[name] = run()
    except (PipelineError, MissingStratumData, MissingOracleEntry, ValueError, ArithmeticError) as exc:
        report.errors[name] = str(exc)


COMPARISONS = (
    ("direct[printed]", "formula[printed]"),
    ("direct[torus]", "formula[torus]"),
    ("direct[printed]", "wallcrossing"),
    ("direct[torus]", "wallcrossing"),
    ("formula[printed]", "wallcrossing"),
    ("wallcrossing", "wallcrossing[general]"),
)


def consistency_report(beta: NumClass, g: GeometryOracle) -> ConsistencyReport:
    """Run every route and compare the values pairwise by exact equality."""
    report = ConsistencyReport(beta)
    for conv in Convention:
        _attempt(report, f"direct[{conv.value}]", lambda conv=conv: compute_direct(beta, g, conv)[0].value)
        _attempt(
            report,
            f"formula[{conv.value}]",
            lambda conv=conv: compute_formula(beta, integrals_from_oracle(beta, g), g, conv).value,
        )
    _attempt(report, "wallcrossing", lambda: wallcrossing_rank2(beta, g).value)
    _attempt(
        report,
        "wallcrossing[general]",
        lambda: semistable_from_frozen(wallcrossing_general(beta, 2, g), 2).value,
    )
    for left, right in COMPARISONS:
        if left in report.values and right in report.values:
            diff = report.values[left] - report.values[right]
            status = "agree" if diff.is_zero() else "disagree"
            report.verdicts.append(Verdict(left, right, status, None if diff.is_zero() else diff))
        else:
            report.verdicts.append(Verdict(left, right, "unavailable"))
    try:
        d1 = stratum_dims(g.rank_two_entry(beta))["d1"]
        if parity_of(d1) is Parity.EVEN and g.decompositions(beta):
            report.notes.append("d1 is even: the sign (-1)^(d1+1) of the first closed-form sum is used unchanged")
    except (MissingOracleEntry, ValueError):
        pass
    return report


__all__ = [
    "COMPARISONS",
    "ConsistencyReport",
    "MissingStratumData",
    "OracleIntegrals",
    "PipelineError",
    "Verdict",
    "compute_direct",
    "compute_formula",
    "consistency_report",
    "integrals_from_oracle",
    "self_extension_weight",
]
