import re

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)(\w*)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).lstrip("_"))
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(key, "PASS")
        _CRITERIA[key] = "FAIL" if report.outcome != "passed" or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, tag), outcome in sorted(_CRITERIA.items()):
        label = f"criterion {num}" + (f" [{tag.replace('_', ' ')}]" if tag else "")
        terminalreporter.write_line(f"{label}: {outcome}")


@pytest.fixture(scope="session")
def table1_algebras():
    from addact.catalog import table1, table1_algebra

    return {e.id: table1_algebra(e.id) for e in table1()}
