import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    ok = report.passed if report.when == "call" else False
    prev = _RESULTS.get(number, (title, True))
    _RESULTS[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}")
