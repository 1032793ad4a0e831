"""Shared fixtures; the heavy multiprecision solves are session-scoped."""

from __future__ import annotations

import pytest

from zetalab import (
    PrecisionContext,
    calibrate_b,
    make_complex,
    solve_grid,
)
from zetalab.solver import GridSpec

STABLE = dict(sigma="0.5", t1="188.4955592", dt="0.628318531", n_rows=100)
LEFT = dict(sigma="0.5", t1="157.0796327", dt="0.785398163", n_rows=100)


@pytest.fixture(scope="session")
def fig2_solution():
    """Reference stable-grid solve at the full budget (P=100)."""
    return solve_grid(GridSpec(digits=100, **STABLE))


@pytest.fixture(scope="session")
def fig2_p90():
    return solve_grid(GridSpec(digits=90, **STABLE))


@pytest.fixture(scope="session")
def fig2_p50():
    return solve_grid(GridSpec(digits=50, **STABLE))


@pytest.fixture(scope="session")
def left_solution():
    """Left-offset deformation grid at P=100."""
    return solve_grid(GridSpec(digits=100, **LEFT))


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def cal1000(ctx30):
    """Scale calibration at s = 0.5 + 1000i."""
    return calibrate_b(make_complex("0.5", "1000", ctx30), ctx30)


@pytest.fixture(scope="session")
def cal200(ctx30):
    """Scale calibration at s = 0.5 + 200i (spiral experiments)."""
    return calibrate_b(make_complex("0.5", "200", ctx30), ctx30)
