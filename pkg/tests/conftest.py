import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import make_lexicon

_ACCEPTANCE_RESULTS = {}


@pytest.fixture
def toy_lexicon():
    return make_lexicon()


def pytest_configure(config):
    _ACCEPTANCE_RESULTS.clear()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    num, title = marker.args
    if report.when == "setup" and report.skipped:
        reason = ""
        if isinstance(report.longrepr, tuple):
            reason = report.longrepr[2]
        _ACCEPTANCE_RESULTS[num] = (title, "SKIP", reason)
    elif report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        if report.skipped:
            reason = ""
            if isinstance(report.longrepr, tuple):
                reason = report.longrepr[2]
            _ACCEPTANCE_RESULTS[num] = (title, "SKIP", reason)
        else:
            _ACCEPTANCE_RESULTS[num] = (title, status, "")
    elif report.when == "setup" and report.failed:
        _ACCEPTANCE_RESULTS[num] = (title, "FAIL", "error during setup")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE_RESULTS):
        title, status, reason = _ACCEPTANCE_RESULTS[num]
        line = f"criterion {num}: {status} - {title}"
        if reason:
            line += f" ({reason})"
        terminalreporter.write_line(line)
