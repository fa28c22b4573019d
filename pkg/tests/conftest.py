import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    failed = report.failed
    if report.when == "call" or failed:
        prev = _results.get(key, (marker.args[1], True))
        _results[key] = (prev[0], prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results):
        text, passed = _results[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key:>2}. {text}")
