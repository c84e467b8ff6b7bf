"""Prints one PASS/FAIL line per acceptance criterion at the end of a run."""

_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        props = dict(report.user_properties)
        _criteria[report.nodeid] = (report.outcome, props.get("criterion", report.nodeid), props.get("measured", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, title, measured in sorted(_criteria.values(), key=lambda v: v[1]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {title}  {measured}".rstrip())
