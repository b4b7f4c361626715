"""Command-line interface: compute, verify, trace and table."""

from __future__ import annotations

import itertools
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

import click

from .classes import NumClass
from .golden import FAIL, SUITES, run_suites
from .groups import STANDARD_F_TABLE, FTable, GL2, GM, GM2, SemiDirect
from .oracle import BUILTINS, GeometryOracle, UnsupportedGeometry, builtin_geometry, load_geometry
from .parsing import ParseError, parse_poly
from .pipeline import PipelineError, compute_direct, compute_formula, integrals_from_oracle
from .polys import ParamPoly, PoleReport, eval_limit, format_poly
from .stackfun import Convention
from .trace import DerivationTrace
from .wallcrossing import semistable_from_frozen, wallcrossing_general, wallcrossing_rank2

MAX_CELLS = 10_000

EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2


class CliFailure(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _failing_module(exc: BaseException) -> str:
    tb = exc.__traceback__
    module = "cli"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("hallstack."):
            module = name.split(".", 1)[1]
        tb = tb.tb_next
    return module


def _fail(exc: BaseException, code: int) -> CliFailure:
    cause = exc.__cause__ if isinstance(exc, PipelineError) and exc.__cause__ is not None else exc
    return CliFailure(f"error [{_failing_module(cause)}]: {exc}", code)


def _load(geometry: str, degree: int, chi: Optional[str]) -> GeometryOracle:
    try:
        if geometry in BUILTINS:
            return builtin_geometry(geometry, degree, chi)
        path = Path(geometry)
        if not path.is_file():
            raise CliFailure(f"error [cli]: no builtin or file named {geometry!r}", EXIT_USAGE)
        return load_geometry(path.read_text(), path.stem)
    except ParseError as exc:
        raise _fail(exc, EXIT_USAGE) from exc
    except (UnsupportedGeometry, ValueError) as exc:
        raise _fail(exc, EXIT_USAGE) from exc


def _select_class(g: GeometryOracle, degree: int, rank: int, chi: Optional[str], builtin: bool) -> NumClass:
    candidates = [e.cls for e in g.rank_two_classes() if e.cls.degree == degree]
    if chi is not None and not builtin:
        try:
            wanted = parse_poly(chi, g.params)
        except ParseError as exc:
            raise _fail(exc, EXIT_USAGE) from exc
        candidates = [c for c in candidates if c.chi == wanted]
    if len(candidates) != 1:
        raise CliFailure(
            f"error [cli]: expected exactly one rank-2 class of degree {degree} in {g.name}, found {len(candidates)}",
            EXIT_USAGE,
        )
    base = candidates[0]
    return NumClass(base.degree, base.chi, rank)


def _evaluate(
    beta: NumClass, g: GeometryOracle, convention: Convention, method: str
) -> tuple[ParamPoly, DerivationTrace]:
    trace = DerivationTrace()
    if beta.rank != 2:
        frozen = wallcrossing_general(beta.sheaf, beta.rank, g, trace)
        return semistable_from_frozen(frozen, beta.rank).value, trace
    if method == "direct":
        inv, trace = compute_direct(beta, g, convention)
        return inv.value, trace
    if method == "formula":
        return compute_formula(beta, integrals_from_oracle(beta, g), g, convention, trace=trace).value, trace
    return wallcrossing_rank2(beta, g, trace).value, trace


def _run(
    geometry: str, degree: int, rank: int, chi: Optional[str], convention: str, method: str
) -> tuple[ParamPoly, DerivationTrace, GeometryOracle]:
    g = _load(geometry, degree, chi)
    beta = _select_class(g, degree, rank, chi, geometry in BUILTINS)
    try:
        value, trace = _evaluate(beta, g, Convention(convention), method)
    except CliFailure:
        raise
    except Exception as exc:
        raise _fail(exc, EXIT_CHECK_FAILURE) from exc
    return value, trace, g


def _main_guard(func):
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CliFailure as exc:
            click.echo(str(exc), err=True)
            sys.exit(exc.code)

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


_geometry_opt = click.option("--geometry", default="conifold", show_default=True, help="Builtin name or config path.")
_degree_opt = click.option("--degree", type=int, default=1, show_default=True, help="Curve degree of the sheaf part.")
_rank_opt = click.option("--rank", type=click.IntRange(min=1), default=2, show_default=True, help="Rank of the pair.")
_chi_opt = click.option("--chi", default=None, help="Euler characteristic binding such as r or 2q.")
_convention_opt = click.option(
    "--convention",
    type=click.Choice([c.value for c in Convention]),
    default=Convention.PRINTED.value,
    show_default=True,
    help="Treatment of rank-one unipotent stabilizers.",
)
_method_opt = click.option(
    "--method",
    type=click.Choice(["direct", "formula", "wallcrossing"]),
    default="direct",
    show_default=True,
)


@click.group()
def main() -> None:
    """Rank-two pair invariants from stratified Hall algebra computations."""


@main.command()
@_geometry_opt
@_degree_opt
@_rank_opt
@_chi_opt
@click.option("--mode", type=click.Choice(["value", "trace", "latex"]), default="value", show_default=True)
@_convention_opt
@_method_opt
@_main_guard
def compute(geometry: str, degree: int, rank: int, chi: Optional[str], mode: str, convention: str, method: str) -> None:
    """Print the invariant of the selected class."""
    value, trace, _ = _run(geometry, degree, rank, chi, convention, method)
    if mode == "trace":
        click.echo(trace.render(), nl=False)
    elif mode == "latex":
        click.echo(trace.render(latex=True), nl=False)
        click.echo(format_poly(value, latex=True))
        return
    click.echo(format_poly(value))


@main.command()
@_geometry_opt
@_degree_opt
@_rank_opt
@_chi_opt
@click.option("--mode", type=click.Choice(["trace", "latex"]), default="trace", show_default=True)
@_convention_opt
@_method_opt
@_main_guard
def trace(geometry: str, degree: int, rank: int, chi: Optional[str], mode: str, convention: str, method: str) -> None:
    """Print the derivation trace followed by the result."""
    value, tr, _ = _run(geometry, degree, rank, chi, convention, method)
    latex = mode == "latex"
    click.echo(tr.render(latex=latex), nl=False)
    click.echo(f"result: {format_poly(value, latex=latex)}")


_F_ENTRY = re.compile(r"^(GL2|B)/(Gm|Gm\^2)=(-?\d+(?:/\d+)?)$")


def _f_table(entries: tuple[str, ...]) -> FTable:
    extra = {}
    for text in entries:
        m = _F_ENTRY.match(text.replace(" ", ""))
        if m is None:
            raise CliFailure(f"error [cli]: bad --f-entry {text!r}; use GL2/Gm^2=1/2 or B/Gm=-1", EXIT_USAGE)
        group = GL2() if m.group(1) == "GL2" else SemiDirect(1, 2)
        target = GM2 if m.group(2) == "Gm^2" else GM
        extra[(group, target)] = Fraction(m.group(3))
    return STANDARD_F_TABLE.with_entries(extra)


@main.command()
@_geometry_opt
@_degree_opt
@_chi_opt
@click.option("--only", type=click.Choice(SUITES), default=None, help="Run a single suite.")
@click.option("--f-entry", "f_entries", multiple=True, help="Override a decomposition weight, e.g. GL2/Gm^2=1/3.")
@_main_guard
def verify(geometry: str, degree: int, chi: Optional[str], only: Optional[str], f_entries: tuple[str, ...]) -> None:
    """Run the golden, Poincaré, weight-table and consistency suites."""
    table = _f_table(f_entries)
    g = _load(geometry, degree, chi)
    beta = _select_class(g, degree, 2, chi, geometry in BUILTINS) if g.rank_two_classes() else None
    results = run_suites(only, beta, g, table, include_golden=geometry in BUILTINS)
    for r in results:
        click.echo(str(r))
    failures = [r for r in results if r.status == FAIL]
    click.echo(f"{len(results) - len(failures)} ok, {len(failures)} failed")
    if failures:
        sys.exit(EXIT_CHECK_FAILURE)


def _parse_sweep(text: str) -> tuple[str, range]:
    m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)=(-?\d+)\.\.(-?\d+)", text.replace(" ", ""))
    if m is None:
        raise CliFailure(f"error [cli]: bad --sweep {text!r}; use var=lo..hi", EXIT_USAGE)
    lo, hi = int(m.group(2)), int(m.group(3))
    return m.group(1), range(lo, hi + 1)


def _cell(value: ParamPoly, point: dict[str, int]) -> str:
    missing = [v for v in value.variables if v not in point]
    if missing:
        return f"error: unbound {','.join(missing)}"
    result = eval_limit(value, point)
    if isinstance(result, PoleReport):
        return f"error: {result}"
    return str(result)


@main.command()
@_geometry_opt
@_degree_opt
@_rank_opt
@_chi_opt
@click.option("--sweep", "sweeps", multiple=True, required=True, help="Numeric range var=lo..hi; repeatable.")
@_convention_opt
@_method_opt
@_main_guard
def table(
    geometry: str, degree: int, rank: int, chi: Optional[str], sweeps: tuple[str, ...], convention: str, method: str
) -> None:
    """Tab-separated values of the invariant over a numeric grid."""
    parsed = [_parse_sweep(s) for s in sweeps]
    names = [name for name, _ in parsed]
    if len(set(names)) != len(names):
        raise CliFailure("error [cli]: a variable is swept twice", EXIT_USAGE)
    cells = 1
    for _, rng in parsed:
        cells *= len(rng)
    if cells > MAX_CELLS:
        raise CliFailure(f"error [cli]: sweep has {cells} cells, the limit is {MAX_CELLS}", EXIT_USAGE)
    click.echo("\t".join(names + ["value"]))
    if cells == 0:
        return
    value, _, g = _run(geometry, degree, rank, chi, convention, method)
    unknown = [n for n in names if n not in g.params]
    if unknown:
        raise CliFailure(f"error [cli]: swept variables {unknown} are not parameters of {g.name}", EXIT_USAGE)
    for combo in itertools.product(*(rng for _, rng in parsed)):
        point = dict(zip(names, combo))
        click.echo("\t".join([str(v) for v in combo] + [_cell(value, point)]))


if __name__ == "__main__":
    main()
