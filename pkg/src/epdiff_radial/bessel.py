"""Scaled modified Bessel functions.

The radial Green kernels for the nonhomogeneous inertia operators are built
from the pair

    alpha_p(r) = c_p r^{-p/2} I_{p/2}(r),   c_p = 2^{p/2} Gamma(p/2 + 1),
    beta_p(r)  = c_p^{-1} r^{-p/2} K_{p/2}(r),

normalized so that alpha_p(0) = 1 and r^p beta_p(r) -> 1/p as r -> 0.
alpha_p grows like e^r and beta_p decays like e^{-r}; every kernel only ever
needs products alpha_p(r) beta_q(s) with s >= r, so the exponentially scaled
variants ``alpha_scaled`` (e^{-r} alpha_p) and ``beta_escaled`` (e^{r} beta_p)
are provided for overflow-free composition.

Backed by scipy's exponentially scaled ``ive``/``kve``; an arbitrary-precision
mpmath oracle pins the values in the test suite.
"""

import math

import numpy as np
from scipy.special import ive, kve

__all__ = [
    "coeff",
    "alpha",
    "beta",
    "beta_scaled",
    "alpha_scaled",
    "beta_escaled",
    "alpha_prime",
    "beta_prime",
    "wronskian_residual",
]


def coeff(p):
    """Normalization constant c_p = 2^{p/2} Gamma(p/2 + 1)."""
    return 2.0 ** (p / 2.0) * math.gamma(p / 2.0 + 1.0)


def _as_radii(r):
    """Return (1-d float array, was_scalar flag)."""
    arr = np.atleast_1d(np.asarray(r, dtype=float))
    return arr, np.ndim(r) == 0


def _restore(out, scalar):
    return float(out[0]) if scalar else out


def alpha(p, r):
    """alpha_p(r) = c_p r^{-p/2} I_{p/2}(r), continuously extended to 1 at r=0.

    Parameters
    ----------
    p : float
        Order, p >= 0 (in practice n or n - 2 for integer dimension n).
    r : float or ndarray
        Radius, r >= 0.
    """
    r, scalar = _as_radii(r)
    if np.any(r < 0):
        raise ValueError("alpha requires r >= 0")
    out = np.ones_like(r)
    pos = r > 0
    rp = r[pos]
    out[pos] = coeff(p) * rp ** (-p / 2.0) * ive(p / 2.0, rp) * np.exp(rp)
    return _restore(out, scalar)


def alpha_scaled(p, r):
    """e^{-r} alpha_p(r): overflow-free for arbitrarily large r."""
    r, scalar = _as_radii(r)
    out = np.ones_like(r)
    pos = r > 0
    rp = r[pos]
    out[pos] = coeff(p) * rp ** (-p / 2.0) * ive(p / 2.0, rp)
    return _restore(out, scalar)


def beta(p, r):
    """beta_p(r) = c_p^{-1} r^{-p/2} K_{p/2}(r); diverges at r = 0.

    Raises
    ------
    ValueError
        If any r <= 0 (use :func:`beta_scaled` for the product r^p beta_p
        near the origin).
    """
    r, scalar = _as_radii(r)
    if np.any(r <= 0):
        raise ValueError("beta requires r > 0; use beta_scaled near r = 0")
    out = r ** (-p / 2.0) * kve(p / 2.0, r) * np.exp(-r) / coeff(p)
    return _restore(out, scalar)


def beta_escaled(p, r):
    """e^{r} beta_p(r): the exponentially scaled decaying solution."""
    r, scalar = _as_radii(r)
    if np.any(r <= 0):
        raise ValueError("beta_escaled requires r > 0")
    out = r ** (-p / 2.0) * kve(p / 2.0, r) / coeff(p)
    return _restore(out, scalar)


def beta_scaled(p, r):
    """Regularized product r^p beta_p(r), continuously extended to 1/p at r=0.

    Needed by the weight Q and criterion S near the origin, where beta_p
    itself diverges like r^{-p}/p.
    """
    r, scalar = _as_radii(r)
    if np.any(r < 0):
        raise ValueError("beta_scaled requires r >= 0")
    if p <= 0 and np.any(r == 0):
        raise ValueError("beta_scaled undefined at r = 0 for p = 0")
    out = np.full_like(r, 1.0 / p if p > 0 else np.nan)
    pos = r > 0
    rp = r[pos]
    out[pos] = rp ** (p / 2.0) * kve(p / 2.0, rp) * np.exp(-rp) / coeff(p)
    return _restore(out, scalar)


def alpha_prime(p, r):
    """alpha_p'(r) = (r / (p+2)) alpha_{p+2}(r)  (recurrence, not FD)."""
    r, scalar = _as_radii(r)
    out = r / (p + 2.0) * alpha(p + 2.0, r)
    return _restore(np.atleast_1d(out), scalar)


def beta_prime(p, r):
    """beta_p'(r) = -(p+2) r beta_{p+2}(r)  (recurrence, not FD)."""
    r, scalar = _as_radii(r)
    out = -(p + 2.0) * r * beta(p + 2.0, r)
    return _restore(np.atleast_1d(out), scalar)


def wronskian_residual(p, r):
    """Residual of the Wronskian identity beta_p alpha_p' - alpha_p beta_p' = r^{-p-1}.

    Evaluated through the exponentially scaled pair so the e^{+-r} factors
    cancel analytically; should vanish to roundoff for all p >= 0, r > 0.
    """
    r, scalar = _as_radii(r)
    # beta_p * alpha_p' = [e^r beta_p] * (r/(p+2)) [e^-r alpha_{p+2}]
    term1 = beta_escaled(p, r) * r / (p + 2.0) * alpha_scaled(p + 2.0, r)
    # alpha_p * beta_p' = -[e^-r alpha_p] * (p+2) r [e^r beta_{p+2}]
    term2 = -alpha_scaled(p, r) * (p + 2.0) * r * beta_escaled(p + 2.0, r)
    out = term1 - term2 - r ** (-p - 1.0)
    return _restore(np.atleast_1d(out), scalar)
