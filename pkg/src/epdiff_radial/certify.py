"""Blowup certificates: numerical verification of the comparison hypotheses.

A certificate for a kernel spec checks, on sampled meshes,

  (a) positivity of phi on the wedge D,
  (b) log-supermodularity d^2 ln phi / dr ds >= 0,
  (c) a uniform lower bound S(r) >= C > 0 of the diagonal criterion,

and from C, the weight Q and a nonpositive momentum omega_0 builds the
Liouville majorant

    q_tilde(t, r) = (1 - (C t / 2) M(r))^2,
    M(r) = int_r^{R_max} s^{n-1} |omega_0(s)| / Q(s) ds,

which dominates the monitored quantity q = Q(gamma) rho / Q(r) and bounds
the blowup time by T_bound = 2 / (C M(0)).
"""

from dataclasses import dataclass, field

import numpy as np

from .kernels import (
    phi,
    phi0_weight,
    q_weight,
    q_weight_power,
    q_weight_smooth,
    s_criterion,
    s_limit_at_zero,
)
from .quadrature import tail_cumtrapz

__all__ = [
    "BlowupCertificate",
    "certify",
    "majorant",
    "monitored_quantity",
    "check_dominance",
    "h2_ratio_bounds",
]

SAFETY_MARGIN = 1e-9
DOMINANCE_TOL = 1e-4


@dataclass
class BlowupCertificate:
    """Outcome of the kernel-condition checks plus the majorant data.

    ``applicable`` records whether omega_0 was admissible (nonpositive, not
    identically zero); the kernel conditions are checked either way.
    """

    spec: object
    grid: object
    applicable: bool
    passed: bool
    c_bound: float
    s_min_location: float
    conditions: dict
    q_samples: np.ndarray = field(repr=False)
    m_tail: np.ndarray = field(repr=False)
    t_bound: float = np.inf

    def report(self):
        """Human-readable key: value lines."""
        lines = [
            f"spec = sigma={self.spec.sigma} k={self.spec.k} n={self.spec.n}",
            f"applicable = {'yes' if self.applicable else 'no (omega0 not <= 0)'}",
            f"passed = {'yes' if self.passed else 'no'}",
        ]
        for name, cond in self.conditions.items():
            lines.append(
                f"condition_{name} = {'pass' if cond['passed'] else 'FAIL'} "
                f"(worst {cond['worst_value']:.6e} at {cond['worst_point']})"
            )
        lines.append(f"C = {self.c_bound:.12g}")
        lines.append(f"S_min_location = {self.s_min_location:.6g}")
        lines.append(f"M0 = {self.m_tail[0]:.12g}")
        lines.append(f"T_bound = {self.t_bound:.12g}")
        return "\n".join(lines)


def _condition_mesh(r_max, num=200):
    """Log-spaced (r, s) sample of D with a refined near-diagonal band."""
    v = np.geomspace(1e-3, r_max, num)
    r, s = np.meshgrid(v, v, indexing="ij")
    keep = s >= r
    pairs = [(r[keep], s[keep])]
    # near-diagonal band: separations small enough to probe the boundary of
    # D but large enough that the supermodularity stencil stays above its
    # roundoff floor (h = separation/4 >= 1e-3)
    for gap in (4e-3, 1e-2, 1e-1):
        rv = v[v + gap <= r_max]
        pairs.append((rv, rv + gap))
    return (np.concatenate([p[0] for p in pairs]),
            np.concatenate([p[1] for p in pairs]))


def _positivity(spec, r, s):
    vals = phi(spec, r, s)
    # include exact-diagonal points, excluded from the supermodularity set
    diag = np.geomspace(1e-3, s[-1], 200)
    vals = np.concatenate([vals, phi(spec, diag, diag)])
    rr = np.concatenate([r, diag])
    ss = np.concatenate([s, diag])
    i = int(np.argmin(vals))
    return {
        "passed": bool(vals[i] > 0.0),
        "worst_value": float(vals[i]),
        "worst_point": (float(rr[i]), float(ss[i])),
    }


def _log_supermodularity(spec, r, s):
    """Discrete mixed second difference of ln phi, h = min(1e-3, (s-r)/4).

    For the separable kernels ((0,1) and (1,1)) ln phi splits into a pure
    function of r plus a pure function of s, so the stencil is identically
    zero for every h; that exact value is returned directly.  For the
    remaining cases the exponential/power prefactors likewise cancel in the
    stencil and it is evaluated as the log of a ratio of the smooth factors,
    which keeps the roundoff floor well below the 1e-9 tolerance.
    """
    keep = s - r >= 4e-3
    r, s = r[keep], s[keep]
    if (spec.sigma, spec.k) in ((0, 1), (1, 1)):
        return {"passed": True, "worst_value": 0.0, "worst_point": None}
    h = np.minimum(1e-3, (s - r) / 4.0)
    if spec.sigma == 0:
        n = spec.n
        c1 = 2.0 * n * (n - 2.0)
        c2 = 2.0 * n * (n + 2.0)

        def smooth(a, b):
            # phi = s^-n * P(r,s); the s^-n part cancels in the stencil
            return b**2 / c1 - a**2 / c2

    else:

        def smooth(a, b):
            # phi = (1/2) e^{r-s} * Phi with Phi built from scaled Bessel
            # factors; e^{r-s} contributes nothing to the stencil
            from . import bessel

            n = spec.n
            return (
                n * bessel.alpha_scaled(n, a) * bessel.beta_escaled(n, b)
                + bessel.alpha_scaled(n, a) * bessel.beta_escaled(n - 2, b) / n
                - n * bessel.alpha_scaled(n - 2, a) * bessel.beta_escaled(n, b)
            )

    ratio = (smooth(r + h, s + h) * smooth(r, s)) / (
        smooth(r + h, s) * smooth(r, s + h)
    )
    vals = np.log(ratio) / h**2
    i = int(np.argmin(vals))
    return {
        "passed": bool(vals[i] >= -1e-9),
        "worst_value": float(vals[i]),
        "worst_point": (float(r[i]), float(s[i])),
    }


def _s_bound(spec, r_max):
    r = np.concatenate([[0.0], np.geomspace(1e-3, r_max, 500)])
    vals = s_criterion(spec, r)
    i = int(np.argmin(vals))
    c = float(vals[i]) - SAFETY_MARGIN
    return c, float(r[i]), {
        "passed": bool(c > 0.0),
        "worst_value": float(vals[i]),
        "worst_point": float(r[i]),
    }


def certify(spec, grid, omega0):
    """Check conditions (a)-(c) and assemble the majorant for omega_0.

    Failures are recorded in the certificate, never raised.  C is taken
    from the sampled minimum of S (minus a 1e-9 safety margin), not from
    closed forms, so the certificate only claims what it verified.
    """
    omega0 = np.asarray(omega0, dtype=float)
    applicable = bool(np.all(omega0 <= 0.0)) and bool(np.any(omega0 != 0.0))
    r_mesh, s_mesh = _condition_mesh(grid.r_max)
    cond_a = _positivity(spec, r_mesh, s_mesh)
    cond_b = _log_supermodularity(spec, r_mesh, s_mesh)
    c_bound, s_loc, cond_c = _s_bound(spec, grid.r_max)
    conditions = {
        "positivity": cond_a,
        "log_supermodularity": cond_b,
        "S_bound": cond_c,
    }
    passed = all(c["passed"] for c in conditions.values())
    q_samples = q_weight(spec, grid.r)
    m_tail = tail_cumtrapz(phi0_weight(spec, grid.r) * np.abs(omega0), grid.r)
    t_bound = np.inf
    if passed and applicable and m_tail[0] > 0.0:
        t_bound = 2.0 / (c_bound * m_tail[0])
    return BlowupCertificate(
        spec=spec,
        grid=grid,
        applicable=applicable,
        passed=passed,
        c_bound=c_bound,
        s_min_location=s_loc,
        conditions=conditions,
        q_samples=q_samples,
        m_tail=m_tail,
        t_bound=t_bound,
    )


def h2_ratio_bounds(n, r):
    """Pointwise checks of the Bessel-ratio inequalities behind the H^2 case.

    The second-order full-metric S bound rests on two monotone ratios of the
    Bessel pair:

        lam_a = alpha_{n-2} / alpha_n:        1 at r = 0, nondecreasing,
                                              <= 1/2 + sqrt(1/4 + r^2/n^2);
        lam_b = beta_{n-2} / (n^2 beta_n):    nondecreasing,
                                              >= sqrt(1/4 + r^2/n^2) - 1/2.

    Evaluated through the exponentially scaled variants so the e^{+-r}
    factors cancel exactly.  ``r`` must be strictly positive and increasing;
    returns per-inequality pass flags and worst slacks (>= 0 means the
    inequality holds with that margin).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
        raise ValueError("r must be strictly positive and increasing")
    from . import bessel

    lam_a = bessel.alpha_scaled(n - 2, r) / bessel.alpha_scaled(n, r)
    lam_b = bessel.beta_escaled(n - 2, r) / (n**2 * bessel.beta_escaled(n, r))
    root = np.sqrt(0.25 + (r / n) ** 2)
    checks = {
        "lam_a_upper": float(np.min(0.5 + root - lam_a)),
        "lam_a_monotone": float(np.min(np.diff(lam_a))),
        "lam_b_lower": float(np.min(lam_b - (root - 0.5))),
        "lam_b_monotone": float(np.min(np.diff(lam_b))),
    }
    tol = 1e-12
    return {
        "lam_a": lam_a,
        "lam_b": lam_b,
        "slacks": checks,
        "passed": bool(all(v >= -tol for v in checks.values())),
    }


def majorant(cert, t):
    """Liouville majorant q_tilde(t, .) = (1 - (C t / 2) M)^2 on the grid."""
    return (1.0 - 0.5 * cert.c_bound * t * cert.m_tail) ** 2


def monitored_quantity(cert, state):
    """q(t, r_i) = Q(gamma_i) rho_i / Q(r_i) with stable r -> 0 extension.

    Computed as (gamma/r)^p m(gamma)/m(r) rho with Q = kappa r^p m(r) and
    m smooth and positive at the origin, so specs with Q(0) = 0 need no
    special treatment; at the origin node q = rho^{p+1}.
    """
    spec = cert.spec
    r = cert.grid.r
    gamma, rho = state.gamma, state.rho
    p = q_weight_power(spec)
    q = np.empty_like(rho)
    q[0] = rho[0] ** (p + 1)
    ratio = gamma[1:] / r[1:]
    q[1:] = (
        ratio**p
        * q_weight_smooth(spec, gamma[1:])
        / q_weight_smooth(spec, r[1:])
        * rho[1:]
    )
    return q


def check_dominance(cert, record):
    """Margins min_i [q_tilde - q] at every recorded time of a trajectory.

    Passes when every margin is >= -1e-4 (discretization slack); the
    comparison theorem gives margin >= 0 in the continuum, with equality
    at t = 0.
    """
    from .solver import FlowState

    if not record.snapshots:
        raise ValueError("trajectory was recorded without snapshots")
    margins = []
    for t, (gamma, rho) in zip(record.times, record.snapshots):
        q = monitored_quantity(cert, FlowState(t=t, gamma=gamma, rho=rho))
        margins.append(float(np.min(majorant(cert, t) - q)))
    margins = np.asarray(margins)
    return {
        "margins": margins,
        "min_margin": float(np.min(margins)),
        "passed": bool(np.min(margins) >= -DOMINANCE_TOL),
    }
