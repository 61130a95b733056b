"""Collects results of tests tagged with @pytest.mark.criterion and prints a per-criterion summary."""

import pytest

_results: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, title = marker.args
    entry = _results.setdefault(label, {"title": title, "passed": True, "failures": []})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.outcome != "passed":
            entry["passed"] = False
            entry["failures"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    order = sorted(_results, key=lambda label: int(label.lstrip("AC")))
    for label in order:
        entry = _results[label]
        status = "PASS" if entry["passed"] else "FAIL"
        line = f"{status}  {label:<5} {entry['title']}"
        if entry["failures"]:
            line += f"  (failed: {', '.join(entry['failures'])})"
        tr.write_line(line)
    passed = sum(e["passed"] for e in _results.values())
    tr.write_line(f"{passed}/{len(_results)} criteria passed")
