"""Shared fixtures and the acceptance summary printed after the run."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from omegalab.geometry import SphereConfig
from omegalab.quadrature import QuadratureSpec

settings.register_profile(
    "omegalab",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("omegalab")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Record and print one pass/fail line for an acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


@pytest.fixture
def cfg_inside() -> SphereConfig:
    return SphereConfig(2, 2.0, 1.0)


@pytest.fixture
def unit_half() -> SphereConfig:
    return SphereConfig(2, 1.0, 0.5)


@pytest.fixture
def fine_quad() -> QuadratureSpec:
    return QuadratureSpec(rel_tol=1e-10)
