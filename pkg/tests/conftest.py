import re

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or report.failed:
        k = int(m.group(1))
        prev = _ACCEPTANCE.get(k, (m.group(2), True))[1]
        _ACCEPTANCE[k] = (m.group(2).replace("_", " "), prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        name, ok = _ACCEPTANCE[k]
        terminalreporter.write_line(f"ACCEPTANCE {k:2d} {name}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="session")
def t357():
    from leonard import QRacahTuple

    return QRacahTuple(3, 5, 7, 2, 3)


@pytest.fixture(scope="session")
def r357(t357):
    from leonard import build_triple

    return build_triple(t357)
