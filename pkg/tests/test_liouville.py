"""The exact Liouville solution against an independent RK4 oracle."""

import numpy as np
import pytest

from epdiff_radial.grid import RadialGrid
from epdiff_radial.liouville import (
    liouville_blowup_time,
    liouville_exact,
    liouville_picard_oracle,
    theta_tail,
)
from conftest import neg_exp_bump


@pytest.fixture(scope="module")
def grid():
    return RadialGrid.uniform(512, 20.0)


def test_theta_tail_closed_form(grid):
    # z0 = -2 r e^{-r^2} has tail integral -e^{-r^2} + e^{-R^2}
    r = grid.r
    z0 = -2.0 * r * np.exp(-(r**2))
    theta = theta_tail(z0, r)
    np.testing.assert_allclose(
        theta, -np.exp(-(r**2)) + np.exp(-400.0), rtol=0, atol=5e-6
    )
    assert theta[-1] == 0.0


def test_exact_formula_is_perfect_square():
    theta = np.array([-2.0, -0.5, 0.0, 1.0])
    q = liouville_exact(theta, 0.7)
    np.testing.assert_allclose(q, (1.0 + 0.35 * theta) ** 2, rtol=1e-15)
    assert np.all(q >= 0.0)
    np.testing.assert_allclose(liouville_exact(theta, 0.0), 1.0)


def test_blowup_time():
    assert liouville_blowup_time(np.array([-4.0, -1.0, 0.0])) == pytest.approx(0.5)
    # nonnegative tails never blow up
    assert liouville_blowup_time(np.array([0.0, 2.0, 5.0])) == np.inf
    # t = T zeroes q exactly at the minimizer
    theta = np.array([-4.0, -1.0])
    assert liouville_exact(theta, 0.5)[0] == pytest.approx(0.0, abs=1e-30)


def test_oracle_matches_exact_solution(grid):
    r = grid.r
    z0 = neg_exp_bump(r, 2.0, 8.0)
    theta = theta_tail(z0, r)
    t_star = liouville_blowup_time(theta)
    horizon = 0.5 * t_star
    times, q_hist = liouville_picard_oracle(z0, horizon, grid)
    err = np.max(np.abs(q_hist[-1] - liouville_exact(theta, horizon)))
    assert err < 1e-7, err


def test_oracle_matches_exact_mixed_sign(grid):
    # a momentum with positive part: q grows somewhere, still exact
    r = grid.r
    z0 = neg_exp_bump(r, 2.0, 6.0) - neg_exp_bump(r, 8.0, 12.0, amplitude=0.5)
    theta = theta_tail(z0, r)
    times, q_hist = liouville_picard_oracle(z0, 0.4 * liouville_blowup_time(theta), grid)
    err = np.max(np.abs(q_hist[-1] - liouville_exact(theta, times[-1])))
    assert err < 1e-7, err


def test_oracle_aborts_near_blowup(grid):
    z0 = neg_exp_bump(grid.r, 2.0, 8.0)
    t_star = liouville_blowup_time(theta_tail(z0, grid.r))
    with pytest.raises(RuntimeError, match="aborted"):
        liouville_picard_oracle(z0, 0.999 * t_star, grid, dt=1e-4)


def test_oracle_zero_momentum_is_constant(grid):
    times, q_hist = liouville_picard_oracle(np.zeros(grid.num), 1.0, grid)
    np.testing.assert_allclose(q_hist, 1.0, rtol=0, atol=1e-15)
