import random

import pytest

from bottchern import random_curvature


def make_data(r, n, seed, hermitian=False, bound=3):
    return random_curvature(r, n, random.Random(f"tests:{r}:{n}:{seed}"), hermitian=hermitian, bound=bound)


@pytest.fixture
def data_factory():
    return make_data


_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.rsplit("::", 1)[-1]
        if report.outcome != "passed" or name not in _criteria:
            _criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        label = name.removeprefix("test_criterion_")
        terminalreporter.write_line(f"{'PASS' if _criteria[name] == 'passed' else 'FAIL'}  {label}")
