"""Green kernels: closed-form values, structural identities, and the
invert/apply operator pair.

High-precision reference values were frozen from an mpmath oracle (50 digits)
built directly from the Bessel-pair definition of the kernels; rational values
come from evaluating the power-law kernels by hand.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epdiff_radial import bessel
from epdiff_radial.grid import RadialGrid
from epdiff_radial.kernels import (
    KernelSpec,
    apply_operator,
    d1_delta,
    d2_delta,
    delta,
    delta_terms,
    invert_operator,
    phi,
    phi0_weight,
    q_weight,
    s_criterion,
    s_limit_at_zero,
)
from epdiff_radial.quadrature import deriv1_uniform, tail_cumtrapz
from conftest import neg_cos_bump, neg_exp_bump

ALL_SPECS = [
    KernelSpec(0, 1, 1),
    KernelSpec(0, 1, 2),
    KernelSpec(0, 1, 3),
    KernelSpec(0, 2, 3),
    KernelSpec(0, 2, 4),
    KernelSpec(1, 1, 1),
    KernelSpec(1, 1, 2),
    KernelSpec(1, 1, 3),
    KernelSpec(1, 2, 3),
    KernelSpec(1, 2, 4),
]


def test_spec_validation():
    with pytest.raises(ValueError):
        KernelSpec(2, 1, 3)
    with pytest.raises(ValueError):
        KernelSpec(0, 3, 3)
    with pytest.raises(ValueError):
        KernelSpec(0, 2, 2)  # second-order homogeneous needs n >= 3
    with pytest.raises(ValueError):
        KernelSpec(0, 1, 0)


def test_phi_closed_form_values():
    assert phi(KernelSpec(0, 1, 3), 1.0, 2.0) == pytest.approx(1.0 / 24.0, rel=1e-14)
    assert phi(KernelSpec(0, 2, 3), 1.0, 2.0) == pytest.approx(19.0 / 240.0, rel=1e-14)
    # sinh(1) e^{-2} / 2, the n = 1 nonhomogeneous kernel
    assert phi(KernelSpec(1, 1, 1), 1.0, 2.0) == pytest.approx(
        0.079523093200894594654, rel=1e-13
    )
    # mpmath oracle for the full second-order kernel, n = 3
    assert phi(KernelSpec(1, 2, 3), 1.0, 2.0) == pytest.approx(
        0.010630833098553980675, rel=1e-12
    )


def test_delta_d1_d2_closed_forms():
    ch = KernelSpec(1, 1, 1)
    # delta = e^{-s} sinh r and its partial derivatives
    assert delta(ch, 1.0, 2.0) == pytest.approx(np.exp(-2.0) * np.sinh(1.0), rel=1e-14)
    assert d1_delta(ch, 1.0, 2.0) == pytest.approx(
        np.exp(-2.0) * np.cosh(1.0), rel=1e-14
    )
    assert d2_delta(ch, 1.0, 2.0) == pytest.approx(
        -np.exp(-2.0) * np.sinh(1.0), rel=1e-14
    )
    # delta = (1/n) r s^{1-n} for the first-order homogeneous kernel
    h1 = KernelSpec(0, 1, 4)
    assert delta(h1, 1.5, 3.0) == pytest.approx(1.5 * 3.0**-3.0 / 4.0, rel=1e-14)
    assert d2_delta(h1, 1.5, 3.0) == pytest.approx(
        (-3.0 / 4.0) * 1.5 * 3.0**-4.0, rel=1e-14
    )
    # symbolic oracle: delta = r s^0/6 - r^3 s^{-2}/30 for (0,2), n = 3,
    # so d1_delta at r = s = 1 is 1/6 - 3/30 = 1/15
    assert d1_delta(KernelSpec(0, 2, 3), 1.0, 1.0) == pytest.approx(
        1.0 / 15.0, rel=1e-13
    )


def test_domain_errors():
    spec = KernelSpec(0, 1, 3)
    with pytest.raises(ValueError):
        phi(spec, 2.0, 1.0)  # s < r
    with pytest.raises(ValueError):
        phi(spec, 0.0, 0.0)
    with pytest.raises(ValueError):
        delta(spec, -1.0, 1.0)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_delta_terms_reproduce_rs_phi(spec):
    rng = np.random.default_rng(7)
    r = rng.uniform(0.01, 10.0, 300)
    s = r + rng.uniform(0.0, 10.0, 300)
    np.testing.assert_allclose(
        delta(spec, r, s), r * s * phi(spec, r, s), rtol=5e-12, atol=1e-300
    )


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_d1_d2_match_finite_differences(spec):
    r = np.array([0.5, 1.0, 2.5, 6.0])
    s = r + 3.0
    h = 1e-6
    fd1 = (delta(spec, r + h, s) - delta(spec, r - h, s)) / (2.0 * h)
    fd2 = (delta(spec, r, s + h) - delta(spec, r, s - h)) / (2.0 * h)
    np.testing.assert_allclose(d1_delta(spec, r, s), fd1, rtol=1e-7)
    np.testing.assert_allclose(d2_delta(spec, r, s), fd2, rtol=1e-7)


def test_q_weight_closed_forms():
    r = np.array([0.0, 0.5, 1.0, 3.0, 10.0])
    np.testing.assert_allclose(q_weight(KernelSpec(0, 1, 3), r), 3.0 * r**2)
    np.testing.assert_allclose(
        q_weight(KernelSpec(0, 2, 3), r), np.full_like(r, 6.0)
    )
    np.testing.assert_allclose(
        q_weight(KernelSpec(1, 1, 1), r), np.exp(r), rtol=1e-13
    )
    pos = r[1:]
    np.testing.assert_allclose(
        q_weight(KernelSpec(1, 1, 3), pos),
        pos**2 / bessel.beta_scaled(3, pos),
        rtol=1e-13,
    )


def test_phi0_weight_is_inverse_q():
    # s^n phi(0, s) = s^{n-1}/Q(s), finite at the origin
    r = np.geomspace(1e-2, 15.0, 50)
    for spec in ALL_SPECS:
        np.testing.assert_allclose(
            phi0_weight(spec, r),
            r ** (spec.n - 1) / q_weight(spec, r),
            rtol=1e-12,
        )
        assert np.isfinite(phi0_weight(spec, 0.0))


def test_s_criterion_closed_forms():
    r = np.geomspace(1e-3, 30.0, 400)
    # constant for the homogeneous kernels
    np.testing.assert_allclose(
        s_criterion(KernelSpec(0, 1, 4), r), 4.0, rtol=1e-9
    )
    np.testing.assert_allclose(
        s_criterion(KernelSpec(0, 2, 5), r), 2.0 * 3.0 / 7.0, rtol=1e-9
    )
    # 1/(r^n beta_n) for the first-order full metric; e^r in dimension 1
    np.testing.assert_allclose(
        s_criterion(KernelSpec(1, 1, 1), r), np.exp(r), rtol=1e-9
    )
    np.testing.assert_allclose(
        s_criterion(KernelSpec(1, 1, 3), r),
        1.0 / bessel.beta_scaled(3, r),
        rtol=1e-9,
    )


def test_s_criterion_origin_limits():
    for spec in ALL_SPECS:
        expected = spec.n if spec.k == 1 else 2.0 * (spec.n - 2.0) / (spec.n + 2.0)
        assert s_limit_at_zero(spec) == pytest.approx(expected)
        assert s_criterion(spec, 0.0) == pytest.approx(expected)
        # the generic formula approaches the hard-coded limit continuously
        # (S itself varies O(r) near 0, e.g. e^r for the n = 1 full metric)
        assert s_criterion(spec, 2e-3) == pytest.approx(expected, rel=5e-3)


def test_invert_zero_is_zero(grid_512):
    u = invert_operator(KernelSpec(1, 2, 3), grid_512, np.zeros(grid_512.num))
    assert np.all(u == 0.0)


def test_invert_apply_linearity(grid_512):
    spec = KernelSpec(1, 1, 2)
    r = grid_512.r
    om1 = neg_exp_bump(r, 2.0, 6.0)
    om2 = neg_exp_bump(r, 4.0, 9.0, amplitude=0.3)
    lhs = invert_operator(spec, grid_512, 2.0 * om1 - 5.0 * om2)
    rhs = 2.0 * invert_operator(spec, grid_512, om1) - 5.0 * invert_operator(
        spec, grid_512, om2
    )
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_roundtrip_moderate_grid(spec):
    # the acceptance-grade 1e-6 roundtrip runs at N = 4096; this is the
    # cheap smoke version of the same self-consistency
    grid = RadialGrid.uniform(2048, 20.0)
    om = neg_cos_bump(grid.r, 0.5, 2.5)
    u = invert_operator(spec, grid, om)
    back = apply_operator(spec, grid, u)
    err = np.max(np.abs(back - om)) / np.max(np.abs(om))
    assert err < 5e-5, err


def test_h1dot_n1_antiderivative_identity(grid_1024):
    # for (0,1) in dimension 1 the operator is -d^2/dr^2, so u' must equal
    # the tail integral of omega
    spec = KernelSpec(0, 1, 1)
    r = grid_1024.r
    om = neg_exp_bump(r, 2.0, 8.0)
    u = invert_operator(spec, grid_1024, om)
    du = deriv1_uniform(u, r[1] - r[0])
    tail = tail_cumtrapz(om, r)
    np.testing.assert_allclose(du, tail, rtol=0, atol=5e-6)


def test_apply_operator_symbolic_oracle(grid_1024):
    # u = r e^{-r^2}: (1 - Delta)u for n = 1 is u - u''
    r = grid_1024.r
    u = r * np.exp(-(r**2))
    d2u = (4.0 * r**3 - 6.0 * r) * np.exp(-(r**2))
    expected = u - d2u
    out = apply_operator(KernelSpec(1, 1, 1), grid_1024, u)
    np.testing.assert_allclose(out[:-8], expected[:-8], rtol=0, atol=1e-6)


def test_apply_operator_linear_field_window():
    # u(r) = r is annihilated by the vector Laplacian, so (sigma - Delta)^k
    # maps it to sigma^k r away from the outer boundary stencils
    grid = RadialGrid.uniform(512, 10.0)
    r = grid.r
    for spec in (KernelSpec(0, 1, 3), KernelSpec(1, 2, 4)):
        out = apply_operator(spec, grid, r)
        window = slice(0, -8)
        np.testing.assert_allclose(
            out[window], float(spec.sigma**spec.k) * r[window], rtol=0, atol=1e-9
        )


def test_apply_requires_uniform_grid():
    grid = RadialGrid.graded(256, 10.0, 1.5)
    with pytest.raises(ValueError):
        apply_operator(KernelSpec(0, 1, 3), grid, np.zeros(grid.num))


def test_underresolved_momentum_warns():
    grid = RadialGrid.uniform(256, 20.0)
    om = np.zeros(grid.num)
    om[64:70] = np.array([-1.0, 1.0, -1.0, 1.0, -1.0, 1.0])  # 1-cell features
    with pytest.warns(UserWarning, match="under-resolved"):
        invert_operator(KernelSpec(0, 1, 2), grid, om)


@given(
    amp=st.floats(min_value=0.1, max_value=10.0),
    lo=st.floats(min_value=0.5, max_value=4.0),
    width=st.floats(min_value=1.0, max_value=6.0),
)
@settings(max_examples=25, deadline=None)
def test_inverted_field_of_negative_momentum_is_negative(amp, lo, width):
    # the kernel is positive, so nonpositive momentum gives a nonpositive
    # velocity field (this is what drives inward collapse)
    grid = RadialGrid.uniform(512, 20.0)
    om = neg_exp_bump(grid.r, lo, min(lo + width, 11.9), amplitude=amp)
    u = invert_operator(KernelSpec(1, 1, 2), grid, om)
    assert np.all(u <= 1e-14)
