import numpy as np
import pytest

from psr.units import DimensionlessParams


@pytest.fixture(scope="session")
def para_params() -> DimensionlessParams:
    """Figure-grade para-H2 parameter set."""
    return DimensionlessParams(gamma_plus=15.0, gamma_minus=0.64, tau1=1000.0, tau2=10.0)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                tag = name.split("::test_criterion_")[1]
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append((tag, status))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for tag, status in sorted(lines):
        terminalreporter.write_line(f"criterion {tag:<40s} {status}")
