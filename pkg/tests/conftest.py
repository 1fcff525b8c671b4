"""Shared fixtures and initial-data helpers for the test suite."""

import numpy as np
import pytest

from epdiff_radial.grid import RadialGrid


def neg_exp_bump(r, lo=2.0, hi=8.0, amplitude=1.0):
    """The standard smooth negative bump, -A exp(1 - 1/(1 - x^2)) on [lo, hi]."""
    x = 2.0 * (r - lo) / (hi - lo) - 1.0
    out = np.zeros_like(r)
    inside = np.abs(x) < 1.0
    out[inside] = -amplitude * np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out


def neg_cos_bump(r, lo=0.5, hi=2.0, power=8):
    """-cos^power bump: C^{power-1} at the endpoints with mild derivatives.

    Gentler high derivatives than the exponential bump, which matters for
    roundtrip tests of the twice-applied operator where finite-difference
    truncation and rounding amplification have to be balanced.
    """
    x = 2.0 * (r - lo) / (hi - lo) - 1.0
    out = np.zeros_like(r)
    inside = np.abs(x) < 1.0
    out[inside] = -np.cos(0.5 * np.pi * x[inside]) ** power
    return out


@pytest.fixture(scope="session")
def grid_1024():
    return RadialGrid.uniform(1024, 20.0)


@pytest.fixture(scope="session")
def grid_512():
    return RadialGrid.uniform(512, 20.0)
