from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from qhecke.exactmath import ParamSpec

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SPECS = [ParamSpec(1, 1), ParamSpec(2, 3), ParamSpec(2, Fraction(1, 2))]
SPEC_IDS = ["1,1", "2,3", "2,1/2"]


@pytest.fixture(params=SPECS, ids=SPEC_IDS)
def params(request) -> ParamSpec:
    return request.param


_verdicts: dict[int, bool] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (report.when != "call" and report.passed):
        return
    n = mark.args[0]
    _verdicts[n] = _verdicts.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_verdicts):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _verdicts[n] else 'FAIL'}")
