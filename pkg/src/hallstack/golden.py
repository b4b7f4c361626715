"""Built-in check suites run by ``hallstack verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .classes import NumClass, weak_stability
from .groups import GL2, GM, GM2, STANDARD_F_TABLE, FTable, SemiDirect, group_poincare, render_group
from .hall import (
    characteristic_element,
    delta_ss_rank2,
    epsilon_rank2,
    hall_product,
    lie_morphism_psi,
    HallElement,
)
from .motivic import Flag12, Grassmannian, Point, Projective, fibration_base
from .oracle import GeometryOracle, conifold
from .pipeline import compute_direct, consistency_report
from .polys import T, InexactDivision, ParamPoly, ParamSpace, format_poly
from .stackfun import Convention, StackFunction, is_virtually_indecomposable, normalize
from .wallcrossing import wallcrossing_rank2

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    status: str
    detail: str = ""

    def __str__(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.status} {self.suite}/{self.name}{tail}"


def _expect(suite: str, name: str, actual: object, expected: object) -> CheckResult:
    if actual == expected:
        return CheckResult(suite, name, PASS)
    return CheckResult(suite, name, FAIL, f"expected {expected}, got {actual}")


def _guard(suite: str, name: str, run: Callable[[], CheckResult]) -> CheckResult:
    try:
        return run()
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(suite, name, FAIL, f"{type(exc).__name__}: {exc}")


def ftable_checks(table: FTable = STANDARD_F_TABLE) -> list[CheckResult]:
    expected = {
        (GL2(), GM2): Fraction(1, 2),
        (GL2(), GM): Fraction(-3, 4),
        (SemiDirect(1, 2), GM2): Fraction(1),
        (SemiDirect(1, 2), GM): Fraction(-1),
    }
    out = []
    for (g, q), value in expected.items():
        name = f"f_coefficient[{render_group(g)},{render_group(q)}]"
        out.append(_guard("ftable", name, lambda g=g, q=q, value=value, name=name: _expect("ftable", name, table.lookup(g, q), value)))
    return out


def poincare_checks() -> list[CheckResult]:
    suite = "poincare"
    gl2 = group_poincare(GL2())
    gm = T**2 - 1
    out = [_expect(suite, "P(GL2)", gl2, (T**4 - 1) * (T**2 - 1) * T**2)]
    step = fibration_base(GL2(), SemiDirect(1, 1))
    step = step if isinstance(step, InexactDivision) else fibration_base(step, GM)
    out.append(_expect(suite, "GL2/(A^1 x| Gm)/Gm", step, T**2 + 1))
    fibers = fibration_base(gl2 - gm**2, gm**2)
    out.append(_expect(suite, "(P(GL2)-P(Gm^2))/P(Gm^2)", fibers, T**4 + T**2 - 1))
    if isinstance(fibers, InexactDivision):
        return out
    further = fibration_base(fibers, GM)
    if isinstance(further, InexactDivision) and further.quotient == T**2 + 2 and further.remainder == ParamPoly.const(1):
        out.append(
            CheckResult(
                suite,
                "further division by P(Gm)",
                WARN,
                f"inexact: quotient {format_poly(further.quotient)}, remainder {format_poly(further.remainder)}; "
                "the two-copy reading of the torus union divides exactly",
            )
        )
    else:
        out.append(CheckResult(suite, "further division by P(Gm)", FAIL, f"unexpected result {further}"))
    return out


def _conifold_checks(g: GeometryOracle) -> list[CheckResult]:
    suite = "golden"
    n, r = ParamSpace(("n", "r")).symbols("n", "r")
    point = g.class_named("A0")
    line = g.class_named("A1")
    beta = g.class_named("B")
    out = [
        _expect(suite, "weak stability of (1,r,0)", weak_stability(NumClass(1, r, 0)), 0),
        _expect(suite, "weak stability of (0,0,1)", weak_stability(point), 1),
        _expect(suite, "moduli of (1,r,1)", g.moduli_descriptor(line), (Projective(n + r - 1), GM)),
        _expect(suite, "moduli of (0,0,1)", g.moduli_descriptor(point), (Point(), GM)),
        _expect(suite, "moduli of (1,r,0)", g.moduli_descriptor(NumClass(1, r, 0)), (Point(), GM)),
        _expect(suite, "hom on the diagonal", g.hom_dim(line, line, True), ParamPoly.const(1)),
        _expect(suite, "ambient dimension", g.ambient_dim(beta), 2 * n + 2 * r - 5),
        _expect(suite, "DT of degree 1", g.dt_value(1), Fraction(1)),
    ]
    a = characteristic_element(line, g)
    b = characteristic_element(point, g)
    out.append(
        _expect(
            suite,
            "product line*point",
            hall_product(a, b, g),
            StackFunction.single(Projective(n + r - 1), GM2) + StackFunction.single(Flag12(n + r), GM),
        )
    )
    out.append(
        _expect(suite, "product point*line", hall_product(b, a, g), StackFunction.single(Projective(n + r - 1), SemiDirect(1, 2)))
    )
    rd = 4 - 2 * n - 2 * r
    out.append(
        _expect(
            suite,
            "semistable strata",
            delta_ss_rank2(beta, g).sf,
            StackFunction.single(Projective(n + r - 1), SemiDirect(1, 2), 1, rd) + StackFunction.single(Grassmannian(2, n + r), GM, 1, rd),
        )
    )
    eps = normalize(epsilon_rank2(beta, g).sf, Convention.PRINTED, g.resolve)
    out.append(_expect(suite, "normalized epsilon", eps, StackFunction.single(Point(), GM, -(n + r) / 2, rd)))
    out.append(_expect(suite, "virtually indecomposable", is_virtually_indecomposable(eps), True))
    out.append(_expect(suite, "invariant map", lie_morphism_psi(HallElement(beta, eps)).value, (n + r) / 2))
    out.append(_expect(suite, "direct computation", compute_direct(beta, g)[0].value, (n + r) / 2))
    out.append(_expect(suite, "wall-crossing", wallcrossing_rank2(beta, g).value, (n + r) / 2))
    return out


def _second_example_check() -> CheckResult:
    g = conifold(2, "2q")
    n, q = g.params.symbols("n", "q")
    value = compute_direct(g.class_named("B"), g)[0].value
    return _expect("golden", "direct computation on 2[P^1]", value, -((n + q) ** 2) / 2 - (n + q))


def golden_checks() -> list[CheckResult]:
    out = []
    try:
        out.extend(_conifold_checks(conifold(1, "r")))
    except Exception as exc:
        out.append(CheckResult("golden", "conifold degree 1", FAIL, f"{type(exc).__name__}: {exc}"))
    out.append(_guard("golden", "direct computation on 2[P^1]", _second_example_check))
    return out


def consistency_checks(beta: NumClass, g: GeometryOracle) -> list[CheckResult]:
    """Direct against closed form, and direct against wall-crossing, where available."""
    report = consistency_report(beta, g)
    out = []
    for left, right in (("direct[printed]", "formula[printed]"), ("direct[printed]", "wallcrossing")):
        v = report.verdict(left, right)
        status = {"agree": PASS, "disagree": FAIL}.get(v.status, WARN)
        detail = "" if v.status == "agree" else (str(v) if v.status == "disagree" else "route unavailable")
        out.append(CheckResult("consistency", f"{left}={right}", status, detail))
    return out


SUITES = ("ftable", "poincare", "golden", "consistency")


def run_suites(
    only: Optional[str],
    beta: Optional[NumClass],
    g: Optional[GeometryOracle],
    table: FTable = STANDARD_F_TABLE,
    include_golden: bool = True,
) -> list[CheckResult]:
    results: list[CheckResult] = []
    if only in (None, "ftable"):
        results.extend(ftable_checks(table))
    if only in (None, "poincare"):
        results.extend(poincare_checks())
    if only in (None, "golden") and include_golden:
        results.extend(golden_checks())
    if only in (None, "consistency") and beta is not None and g is not None:
        results.extend(consistency_checks(beta, g))
    return results
