import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): an acceptance criterion")


def pytest_runtest_logreport(report):
    item = _items.get(report.nodeid)
    if item is None:
        return
    n, title = item
    ok = report.passed if report.when == "call" else not report.failed
    prev = _results.get(n, (title, True, 0.0))
    _results[n] = (title, prev[1] and ok, prev[2] + (report.duration if report.when == "call" else 0.0))


_items = {}


def pytest_collection_modifyitems(items):
    for it in items:
        m = it.get_closest_marker("criterion")
        if m is not None:
            _items[it.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        title, ok, dur = _results[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  ({dur:.2f} s)")
