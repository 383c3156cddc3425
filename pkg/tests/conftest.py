"""Shared test fixtures: the sublattice corpus and acceptance reporting.

Acceptance tests register one line per criterion; the terminal-summary
hook prints them after the run so the PASS/FAIL lines survive pytest's
output capture.
"""

from __future__ import annotations

from contextlib import contextmanager

# square-lattice sublattices of index 1..12, used by property tests
SUBLATTICE_BASES = [
    [[1, 0], [0, 1]],    # index 1
    [[2, 0], [0, 1]],    # 2
    [[1, 1], [-1, 1]],   # 2
    [[3, 0], [0, 1]],    # 3
    [[2, 0], [0, 2]],    # 4
    [[1, 2], [-2, 1]],   # 5
    [[6, 0], [2, 1]],    # 6
    [[2, 1], [0, 4]],    # 8
    [[3, 0], [0, 3]],    # 9
    [[2, 1], [0, 5]],    # 10
    [[4, 1], [0, 3]],    # 12
    [[12, 0], [0, 1]],   # 12
]

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def record_acceptance(number: int, label: str):
    """Record one acceptance criterion outcome for the terminal summary."""
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"ACCEPTANCE {number} FAIL  {label}")
        raise
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {number} PASS  {label}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
