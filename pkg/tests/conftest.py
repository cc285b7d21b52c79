"""Shared test state: the curve suite cache and the acceptance summary."""

from typing import Dict, List

from hkcurves.acm_curve import ACMCurve, random_sigma_curve

CRITERION_LINES: Dict[int, str] = {}


def record_criterion(num: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    CRITERION_LINES[num] = f"[criterion {num}] {status}: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(CRITERION_LINES):
            terminalreporter.write_line(CRITERION_LINES[num])


_SIGMA_SUITES: Dict[int, List[ACMCurve]] = {}


def sigma_suites() -> Dict[int, List[ACMCurve]]:
    """20 certified invariant curves for r = 2 and r = 3, built once."""
    if not _SIGMA_SUITES:
        for r in (2, 3):
            _SIGMA_SUITES[r] = [random_sigma_curve(r, seed) for seed in range(20)]
    return _SIGMA_SUITES
