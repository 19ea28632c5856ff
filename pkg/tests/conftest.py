import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_START = time.perf_counter()
_RESULTS = {}


@pytest.fixture(scope="session")
def session_start():
    return _START


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion has to observe everything else first
    last = [it for it in items if it.name.startswith("test_criterion_11")]
    items[:] = [it for it in items if it not in last] + last


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _RESULTS[name] = (report.passed, dict(report.user_properties))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS):
        ok, props = _RESULTS[name]
        label = props.get("label", name)
        extra = "; ".join("%s=%s" % (k, v) for k, v in props.items() if k != "label")
        terminalreporter.write_line("%s  %s%s" % ("PASS" if ok else "FAIL", label,
                                                  "  [%s]" % extra if extra else ""))
