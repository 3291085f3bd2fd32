"""Shared pytest plumbing for the acceptance gate.

The acceptance tests register one human-readable line per criterion;
printing happens in the terminal-summary phase because pytest's default
capture mode would swallow output written during the tests themselves.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
