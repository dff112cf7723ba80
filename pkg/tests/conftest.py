"""Pytest wiring: acceptance-criterion summary lines at the end of a run."""

from __future__ import annotations

_ACCEPTANCE: list[tuple[int, str]] = []


def record_criterion(number: int, description: str, passed: bool,
                     detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    _ACCEPTANCE.append((number, f"criterion {number:>2}: {status}  "
                                f"{description}{suffix}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
