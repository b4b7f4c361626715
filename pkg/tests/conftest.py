import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)$")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    number = int(m.group(1))
    title = m.group(2).replace("_", " ")
    if report.when == "call" or report.outcome == "failed":
        status = "PASS" if report.passed else "FAIL"
        if number not in _results or status == "FAIL":
            _results[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, title = _results[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({title})")
