"""Bessel layer: frozen high-precision oracle values and structural identities.

The reference values below were generated once with mpmath at 50 digits:

    from mpmath import mp, besseli, besselk, gamma, mpf
    mp.dps = 50
    c = lambda p: 2**(mpf(p)/2) * gamma(mpf(p)/2 + 1)
    alpha = lambda p, r: c(p) * mpf(r)**(-mpf(p)/2) * besseli(mpf(p)/2, r)
    beta  = lambda p, r: mpf(r)**(-mpf(p)/2) * besselk(mpf(p)/2, r) / c(p)
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epdiff_radial import bessel

# (p, r, value) triples from the mpmath oracle
ALPHA_ORACLE = [
    (3, 0.1, 1.0010003572090022252),
    (3, 1.0, 1.1036383235143269648),
    (3, 5.0, 7.1243167691076111178),
    (3, 20.0, 1728401.0086473778734),
]

BETA_ORACLE = [
    (3, 0.1, 331.77371994651851016),
    (3, 1.0, 0.24525296078096154773),
    (3, 5.0, 0.00010780715198536747355),
    (3, 20.0, 1.8035094196337380995e-12),
]


@pytest.mark.parametrize("p,r,expected", ALPHA_ORACLE)
def test_alpha_against_mpmath(p, r, expected):
    assert bessel.alpha(p, r) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("p,r,expected", BETA_ORACLE)
def test_beta_against_mpmath(p, r, expected):
    assert bessel.beta(p, r) == pytest.approx(expected, rel=1e-13)


def test_scaled_variants_against_mpmath():
    # e^{-40} alpha_3(40) and e^{40} beta_3(40): the unscaled values would
    # overflow/underflow in these products, the scaled ones are O(1)
    assert bessel.alpha_scaled(3, 40.0) == pytest.approx(0.0009140625, rel=1e-13)
    assert bessel.beta_escaled(3, 40.0) == pytest.approx(
        0.00021354166666666666667, rel=1e-13
    )
    # r^p beta_p near the origin: 0.24999375085486763279 at r = 0.01, p = 4
    assert bessel.beta_scaled(4, 0.01) == pytest.approx(
        0.24999375085486763279, rel=1e-13
    )


def test_half_integer_closed_forms():
    # p = 1: alpha_1 = sinh(r)/r, beta_1 = e^{-r}/r
    r = np.array([0.3, 1.0, 2.5, 7.0])
    np.testing.assert_allclose(bessel.alpha(1, r), np.sinh(r) / r, rtol=1e-14)
    np.testing.assert_allclose(bessel.beta(1, r), np.exp(-r) / r, rtol=1e-14)
    # p = 3: alpha_3 = 3 (r cosh r - sinh r)/r^3, beta_3 = e^{-r}(1+r)/(3 r^3)
    np.testing.assert_allclose(
        bessel.alpha(3, r), 3.0 * (r * np.cosh(r) - np.sinh(r)) / r**3, rtol=1e-13
    )
    np.testing.assert_allclose(
        bessel.beta(3, r), np.exp(-r) * (1.0 + r) / (3.0 * r**3), rtol=1e-13
    )


def test_normalization_at_origin():
    for p in (1, 2, 3, 4, 5, 6):
        assert bessel.alpha(p, 0.0) == 1.0  # exact by construction
        assert bessel.alpha_scaled(p, 0.0) == 1.0
        assert bessel.beta_scaled(p, 0.0) == 1.0 / p


def test_beta_scaled_small_r_limit():
    # r^p beta_p(r) -> 1/p; for p >= 2 the defect at r = 1e-6 is below 1e-8.
    # p = 1 approaches its limit only linearly (r beta_1 = e^{-r} exactly),
    # so it is checked against the closed form instead.
    for p in (2, 3, 4, 5, 8):
        assert abs(bessel.beta_scaled(p, 1e-6) - 1.0 / p) < 1e-8
    assert bessel.beta_scaled(1, 1e-6) == pytest.approx(math.exp(-1e-6), rel=1e-13)


def test_derivative_recurrences_against_mpmath():
    # alpha_1'(1) = cosh(1) - sinh(1) = e^{-1}; beta_1'(1) = -3 beta_3(1)
    assert bessel.alpha_prime(1, 1.0) == pytest.approx(
        0.3678794411714423216, rel=1e-13
    )
    assert bessel.beta_prime(1, 1.0) == pytest.approx(
        -0.73575888234288464319, rel=1e-13
    )


def test_wronskian_identity_sweep():
    # |beta_p alpha_p' - alpha_p beta_p' - r^{-p-1}| <= 1e-10 r^{-p-1}
    r = np.geomspace(0.1, 30.0, 200)
    for p in range(1, 9):
        rel = np.abs(bessel.wronskian_residual(p, r)) * r ** (p + 1)
        assert rel.max() < 1e-10, (p, rel.max())


def test_coeff():
    assert bessel.coeff(2) == pytest.approx(2.0)  # 2 * Gamma(2)
    assert bessel.coeff(1) == pytest.approx(math.sqrt(math.pi / 2.0))
    assert bessel.coeff(4) == pytest.approx(8.0)  # 4 * Gamma(3)


def test_domain_errors():
    with pytest.raises(ValueError):
        bessel.alpha(3, -0.5)
    with pytest.raises(ValueError):
        bessel.beta(3, 0.0)
    with pytest.raises(ValueError):
        bessel.beta_escaled(3, np.array([1.0, 0.0]))


@given(
    p=st.integers(min_value=1, max_value=8),
    r=st.floats(min_value=1e-3, max_value=50.0),
)
@settings(max_examples=200, deadline=None)
def test_positivity_and_scaling_consistency(p, r):
    a = bessel.alpha(p, r)
    b = bessel.beta(p, r)
    assert a >= 1.0  # alpha is increasing from alpha(0) = 1
    assert b > 0.0
    # scaled variants are consistent with the plain ones
    assert bessel.alpha_scaled(p, r) == pytest.approx(a * math.exp(-r), rel=1e-12)
    assert bessel.beta_escaled(p, r) == pytest.approx(b * math.exp(r), rel=1e-12)
    assert bessel.beta_scaled(p, r) == pytest.approx(r**p * b, rel=1e-12)


@given(
    p=st.integers(min_value=1, max_value=6),
    r=st.floats(min_value=1e-2, max_value=20.0),
    h=st.floats(min_value=1e-5, max_value=1e-4),
)
@settings(max_examples=100, deadline=None)
def test_prime_matches_central_difference(p, r, h):
    fd = (bessel.alpha(p, r + h) - bessel.alpha(p, r - h)) / (2.0 * h)
    assert bessel.alpha_prime(p, r) == pytest.approx(fd, rel=1e-5, abs=1e-10)
