import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (report.when == "call" or report.failed or report.skipped):
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "ok": True, "notes": []})
    # an expected failure still means the criterion does not hold
    if hasattr(report, "wasxfail"):
        entry["ok"] = False
        entry["notes"].append(report.wasxfail.removeprefix("reason: "))
    elif not report.passed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        line = f"criterion {number:>2}: {'PASS' if entry['ok'] else 'FAIL'}  {entry['title']}"
        if entry["notes"]:
            line += "  [" + "; ".join(entry["notes"]) + "]"
        terminalreporter.write_line(line)
