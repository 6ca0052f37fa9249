import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria: dict[int, dict] = {}
_nodes: dict[str, tuple] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _nodes[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _nodes or report.when not in ("setup", "call"):
        return
    number, title = _nodes[report.nodeid]
    entry = _criteria.setdefault(number, {"title": title, "ok": True})
    if report.outcome != "passed":
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")
