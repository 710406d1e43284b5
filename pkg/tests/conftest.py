"""Shared test plumbing: the acceptance-criteria summary block."""

from __future__ import annotations

ACCEPTANCE_LINES = []


def record_criterion(index, ok, detail):
    line = f"criterion {index}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append((index, line))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
