from collections import defaultdict

import pytest

CRITERIA = {
    1: "Dietz fidelity",
    2: "bond orders",
    3: "electron configurations",
    4: "rotation group laws",
    5: "invariance suite",
    6: "canonical round-trip",
    7: "SDF ingestion",
    8: "coin inference",
    9: "molecule MH",
    10: "prior recovery",
    11: "reactions",
}

_outcomes: dict[int, list[tuple[str, str]]] = defaultdict(list)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if hasattr(report, "wasxfail"):
            # an expected failure still means the criterion is not met
            _outcomes[criterion].append(("FAIL", f"{item.name}: {report.wasxfail}"))
        elif report.passed:
            _outcomes[criterion].append(("PASS", item.name))
        elif report.skipped:
            _outcomes[criterion].append(("SKIP", item.name))
        else:
            _outcomes[criterion].append(("FAIL", item.name))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion, title in CRITERIA.items():
        results = _outcomes.get(criterion)
        if not results:
            tr.write_line(f"criterion {criterion:2d} NOT RUN {title}")
            continue
        states = {state for state, _ in results}
        verdict = "FAIL" if "FAIL" in states else "SKIP" if states == {"SKIP"} else "PASS"
        tr.write_line(f"criterion {criterion:2d} {verdict:<7} {title}")
        for state, detail in results:
            if state != "PASS":
                tr.write_line(f"    {state}: {detail}")
