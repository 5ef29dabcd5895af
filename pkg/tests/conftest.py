import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.LINES
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in lines:
        tag = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{tag}] {label}: {detail}" if detail else f"[{tag}] {label}")
    failed = sum(1 for _, ok, _ in lines if not ok)
    terminalreporter.write_line(f"{len(lines) - failed} passed, {failed} failed")
