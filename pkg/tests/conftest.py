"""Collects acceptance results and prints one line per criterion at the end of the run."""

_results = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when == "teardown":
        return
    number, title = marker.args
    ok, _ = _results.get(number, (True, title))
    ok = ok and call.excinfo is None
    _results[number] = (ok, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        ok, title = _results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
