"""Collects the outcome of every acceptance check and prints one line per criterion."""

import pytest

_RESULTS: dict[str, list[bool]] = {}
_TITLES: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key, title = marker.args
    _TITLES[key] = title
    if report.when == "call" or (report.when == "setup" and report.failed):
        _RESULTS.setdefault(key, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=lambda k: int(k.lstrip("AC"))):
        verdict = "PASS" if all(_RESULTS[key]) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {key}  {_TITLES[key]}")
