"""Collect acceptance outcomes and print one line per criterion at the end."""

import pytest

_results = {}


def pytest_runtest_logreport(report):
    crit = _criteria.get(report.nodeid)
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        prev = _results.get(crit, True)
        _results[crit] = prev and ok


_criteria = {}
_titles = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is None:
            continue
        num, title = mark.args
        _criteria[item.nodeid] = num
        _titles[num] = title


def pytest_terminal_summary(terminalreporter):
    if not _titles:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_titles):
        if num not in _results:
            status = "NOT RUN"
        else:
            status = "PASS" if _results[num] else "FAIL"
        tr.write_line(f"criterion {num}: {status}  {_titles[num]}")


@pytest.fixture
def timer():
    import time

    class Timer:
        def __enter__(self):
            self.start = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.start

    return Timer
