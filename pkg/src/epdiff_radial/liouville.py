"""Exact Liouville-equation solutions and a Picard/RK4 cross-check oracle.

The scalar field q(t, r) with q(0, .) = 1 obeying

    d/dt ln q(t, r) = int_r^inf z_0(s) / q(t, s) ds

has the closed-form solution q(t, r) = (1 + (t/2) Theta_0(r))^2 with
Theta_0(r) = int_r^inf z_0, blowing up (q -> 0 somewhere) at T = 2/K,
K = max(-inf_r Theta_0, 0).  The exact formula is what the blowup
certificates are built on; the independent time-stepping oracle here exists
to validate it and is only used in tests.
"""

import numpy as np

from .quadrature import tail_cumtrapz

__all__ = [
    "theta_tail",
    "liouville_exact",
    "liouville_blowup_time",
    "liouville_picard_oracle",
]


def theta_tail(z0, r):
    """Tail integrals Theta_0(r_i) = int_{r_i}^{R_max} z_0, computed once."""
    return tail_cumtrapz(np.asarray(z0, dtype=float), np.asarray(r, dtype=float))


def liouville_exact(theta0, t):
    """q(t, r) = (1 + (t/2) Theta_0(r))^2 on the sampled tail integrals.

    The formula remains valid past the blowup time (it is a perfect square);
    callers interpret zeros.
    """
    theta0 = np.asarray(theta0, dtype=float)
    return (1.0 + 0.5 * t * theta0) ** 2


def liouville_blowup_time(theta0):
    """T = 2/K with K = max(-min Theta_0, 0); returns inf when K = 0."""
    k = max(-float(np.min(theta0)), 0.0)
    return np.inf if k == 0.0 else 2.0 / k


def liouville_picard_oracle(z0, horizon, grid, dt=None):
    """Integrate the Liouville equation directly by RK4 from q = 1.

    Fixed step chosen so max|RHS| dt <= 1e-3 unless ``dt`` is given.
    Aborts (RuntimeError) if min q drops below 1e-3, where the oracle's
    tolerance claim no longer holds.

    Returns
    -------
    times : ndarray, shape (m+1,)
    q : ndarray, shape (m+1, N)
    """
    z0 = np.asarray(z0, dtype=float)
    r = grid.r

    def rhs(lnq):
        return tail_cumtrapz(z0 * np.exp(-lnq), r)

    lnq = np.zeros_like(z0)
    if dt is None:
        scale = float(np.max(np.abs(rhs(lnq))))
        dt = horizon / 16.0 if scale == 0.0 else min(1e-3 / scale, horizon)
    steps = max(1, int(np.ceil(horizon / dt - 1e-12)))
    dt = horizon / steps
    times = np.linspace(0.0, horizon, steps + 1)
    q_hist = np.empty((steps + 1, len(z0)))
    q_hist[0] = 1.0
    for m in range(steps):
        k1 = rhs(lnq)
        k2 = rhs(lnq + 0.5 * dt * k1)
        k3 = rhs(lnq + 0.5 * dt * k2)
        k4 = rhs(lnq + dt * k3)
        lnq = lnq + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        q_hist[m + 1] = np.exp(lnq)
        if np.min(q_hist[m + 1]) < 1e-3:
            raise RuntimeError(
                f"Liouville oracle aborted at t = {times[m + 1]:.6g}: "
                "q below 1e-3 (approaching blowup)"
            )
    return times, q_hist
