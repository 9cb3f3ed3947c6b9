from collections import defaultdict

import numpy as np
import pytest

# criterion number -> (title, [outcomes])
_CRITERIA: dict = {}
_OUTCOMES = defaultdict(list)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n, title = mark.args
            _CRITERIA[n] = title
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _OUTCOMES[props["criterion"]].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        got = _OUTCOMES.get(n, [])
        if not got:
            status = "NOT RUN"
        elif "failed" in got:
            status = "FAIL"
        elif all(o == "skipped" for o in got):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"criterion {n:>2}: {status:<7} {_CRITERIA[n]}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
