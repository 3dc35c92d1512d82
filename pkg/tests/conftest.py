"""Shared fixtures: acceptance-verdict registry with end-of-run summary."""

import pytest

ACCEPT_RESULTS = {}


@pytest.fixture
def accept():
    def _record(number, ok):
        ACCEPT_RESULTS[number] = bool(ok)
        print("ACCEPT-%d %s" % (number, "PASS" if ok else "FAIL"))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPT_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPT_RESULTS):
        verdict = "PASS" if ACCEPT_RESULTS[number] else "FAIL"
        terminalreporter.write_line("ACCEPT-%d %s" % (number, verdict))
