import pytest

_results: dict[str, dict[str, str]] = {}
_titles: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, part, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, part, title = marker.args
    _titles[number] = title
    parts = _results.setdefault(number, {})
    if report.when == "call" or (report.when == "setup" and report.failed):
        parts[part] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results, key=int):
        parts = _results[number]
        verdict = "PASS" if all(v == "PASS" for v in parts.values()) else "FAIL"
        detail = ", ".join(f"{k}: {v}" for k, v in parts.items())
        tr.write_line(f"criterion {number} {verdict}  {_titles[number]}  [{detail}]")
