import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # replay the acceptance lines after the run; output capture would
    # otherwise hide them for passing tests
    module = sys.modules.get("tests.test_acceptance") or sys.modules.get(
        "test_acceptance"
    )
    lines = getattr(module, "CRITERION_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
