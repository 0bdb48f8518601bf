import re

_TITLES: dict[str, str] = {}
_OUTCOMES: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py::" in item.nodeid:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _TITLES[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid not in _TITLES:
        return
    if report.when == "call" or report.outcome != "passed":
        if _OUTCOMES.get(report.nodeid) != "FAIL":
            _OUTCOMES[report.nodeid] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")

    def number(nodeid):
        m = re.search(r"criterion_(\d+)", nodeid)
        return int(m.group(1)) if m else 0

    for nodeid in sorted(_OUTCOMES, key=number):
        terminalreporter.write_line(f"criterion {number(nodeid):>2}: {_OUTCOMES[nodeid]}  {_TITLES[nodeid]}")
