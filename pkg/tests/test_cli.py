import pytest
from click.testing import CliRunner

from hallstack.cli import MAX_CELLS, main

from synthetic import DIVISIBLE


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_compute_degree_one():
    result = run("compute")
    assert result.exit_code == 0
    assert result.output == "1/2*n+1/2*r\n"


@pytest.mark.parametrize(
    "args, expected",
    [
        (("--degree", "2", "--chi", "2q"), "1/2*n^2+n*q+1/2*q^2-3/4*n-3/4*q"),
        (("--degree", "2", "--chi", "2q", "--convention", "torus"), "-1/2*n^2-n*q-1/2*q^2+1/4*n+1/4*q"),
        (("--degree", "2", "--chi", "2q", "--method", "wallcrossing"), "-1/2*n^2-n*q-1/2*q^2+1/4*n+1/4*q"),
        (("--degree", "2", "--chi", "2q+1"), "0"),
        (("--geometry", "empty"), "0"),
        (("--method", "formula",), "1/2*n+1/2*r"),
        (("--rank", "3"), "1/3*n+1/3*r"),
        (("--chi", "s"), "1/2*n+1/2*s"),
    ],
)
def test_compute_values(args, expected):
    result = run("compute", *args)
    assert result.exit_code == 0, result.output
    assert result.output.strip() == expected


def test_compute_output_is_byte_stable():
    first = run("compute", "--mode", "trace")
    second = run("compute", "--mode", "trace")
    assert first.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes
    assert "<psi.behrend>" in first.output


def test_trace_command_ends_with_result():
    result = run("trace", "--mode", "latex")
    assert result.exit_code == 0
    assert result.output.splitlines()[-1].startswith("result: ")
    assert "\\frac" in result.output


def test_config_file_geometry(tmp_path):
    path = tmp_path / "divisible.geom"
    path.write_text(DIVISIBLE)
    result = run("compute", "--geometry", str(path), "--degree", "4")
    assert result.exit_code == 0
    assert result.output.strip() != ""


def test_usage_errors_exit_two(tmp_path):
    assert run("compute", "--degree", "5").exit_code == 2
    assert run("compute", "--geometry", "nope").exit_code == 2
    assert run("compute", "--degree", "2", "--chi", "q").exit_code == 2
    bad = tmp_path / "bad.geom"
    bad.write_text("[params]\nn\n[class]\nA degree=1 chi=x rank=1\n")
    result = run("compute", "--geometry", str(bad))
    assert result.exit_code == 2
    assert "line 4, column 16" in result.output


def test_computation_failures_exit_one():
    result = run("compute", "--degree", "2", "--method", "formula")
    assert result.exit_code == 1
    assert "error [pipeline]" in result.output
    parity = run("compute", "--degree", "2", "--rank", "3")
    assert parity.exit_code == 1
    assert "error [polys]" in parity.output


def test_table_sweep():
    result = run("table", "--sweep", "n=1..2", "--sweep", "r=0..1")
    assert result.exit_code == 0
    assert result.output == "n\tr\tvalue\n1\t0\t1/2\n1\t1\t1\n2\t0\t1\n2\t1\t3/2\n"


def test_table_empty_range_prints_header_only():
    result = run("table", "--sweep", "n=3..1")
    assert result.exit_code == 0
    assert result.output == "n\tvalue\n"


def test_table_degree_two():
    result = run("table", "--degree", "2", "--chi", "2q", "--sweep", "n=1..2", "--sweep", "q=1..1")
    assert result.exit_code == 0
    assert result.output == "n\tq\tvalue\n1\t1\t1/2\n2\t1\t9/4\n"


def test_table_reports_unbound_and_limits():
    partial = run("table", "--sweep", "n=1..2")
    assert partial.exit_code == 0
    assert "error: unbound r" in partial.output
    assert run("table", "--sweep", f"n=1..{MAX_CELLS + 1}").exit_code == 2
    assert run("table", "--sweep", "x=1..2").exit_code == 2
    assert run("table", "--sweep", "n=1..2", "--sweep", "n=1..2").exit_code == 2
    assert run("table", "--sweep", "n=oops").exit_code == 2


@pytest.mark.parametrize("suite", ["ftable", "poincare", "consistency"])
def test_verify_suites_pass(suite):
    result = run("verify", "--only", suite)
    assert result.exit_code == 0, result.output
    assert "0 failed" in result.output


def test_verify_poincare_surfaces_inexact_division_as_warning():
    result = run("verify", "--only", "poincare")
    assert "WARN" in result.output
    assert "quotient t^2+2, remainder 1" in result.output


def test_verify_golden_reports_second_example_failure():
    result = run("verify", "--only", "golden")
    assert result.exit_code == 1
    assert "FAIL golden/direct computation on 2[P^1]" in result.output


def test_f_entry_override_breaks_the_table_check():
    result = run("verify", "--only", "ftable", "--f-entry", "GL2/Gm^2=1/3")
    assert result.exit_code == 1
    assert run("verify", "--f-entry", "bogus").exit_code == 2


def test_verify_on_config_geometry_skips_golden(tmp_path):
    path = tmp_path / "divisible.geom"
    path.write_text(DIVISIBLE)
    result = run("verify", "--geometry", str(path), "--degree", "4")
    assert result.exit_code == 0, result.output
    assert "golden/" not in result.output
