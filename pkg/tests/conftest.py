"""Shared pytest plumbing.

``ACCEPTANCE_LINES`` collects one human-readable pass/fail line per
top-level acceptance criterion; the lines are echoed after the normal
test summary so they survive output capturing.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section('acceptance criteria')
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
