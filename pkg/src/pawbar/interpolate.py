"""Displacement interpolation between two same-class measures.

This is the single-step kernel of the pairwise algorithm: the point on the
constant-speed Wasserstein geodesic from mu (lambda = 0) to nu (lambda = 1).
lambda = 0 and lambda = 1 return the endpoints without computing a coupling.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateOutput, DimensionMismatch, MixedClass, NotPD, SizeMismatch
from .linalg import cross_sqrt
from .measures import (
    DISTINCT_TOL,
    DiscreteUniform,
    Gaussian,
    Measure,
    Quantile1D,
    min_pairwise_distance,
)
from .measures import PD_RTOL
from .transport import w2_discrete


def _check_lambda(lam: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"interpolation weight must lie in [0, 1], got {lam}")
    return float(lam)


def lerp_matched_points(x: np.ndarray, y_matched: np.ndarray, lam: float) -> np.ndarray:
    """(1 - lam) * x + lam * y_matched, with a distinctness guard.

    y_matched must already be aligned row-by-row with x (i.e. permuted by the
    optimal coupling).  Coincident output points raise DegenerateOutput:
    exact optimal plans cannot produce them, so a collision flags an
    assignment tie.
    """
    z = (1.0 - lam) * x + lam * y_matched
    if min_pairwise_distance(z) <= DISTINCT_TOL:
        raise DegenerateOutput(
            "interpolated support points collided (assignment tie?)"
        )
    return z


def displace_discrete(mu: DiscreteUniform, nu: DiscreteUniform, lam: float) -> DiscreteUniform:
    """Interpolate point k of mu with point sigma(k) of nu."""
    lam = _check_lambda(lam)
    if lam == 0.0:
        return DiscreteUniform(mu.points.copy())
    if lam == 1.0:
        return DiscreteUniform(nu.points.copy())
    _, sigma = w2_discrete(mu, nu)
    return DiscreteUniform(lerp_matched_points(mu.points, nu.points[sigma], lam))


def displace_quantile1d(mu: Quantile1D, nu: Quantile1D, lam: float) -> Quantile1D:
    """Pointwise interpolation of the quantile vectors (monotone matching)."""
    lam = _check_lambda(lam)
    if lam == 0.0:
        return Quantile1D(mu.quantiles.copy())
    if lam == 1.0:
        return Quantile1D(nu.quantiles.copy())
    if mu.n_levels != nu.n_levels:
        raise SizeMismatch(f"quantile grids differ: {mu.n_levels} vs {nu.n_levels}")
    return Quantile1D((1.0 - lam) * mu.quantiles + lam * nu.quantiles)


def displace_gaussian(mu: Gaussian, nu: Gaussian, lam: float) -> Gaussian:
    """Interpolate two Gaussians along the Wasserstein geodesic.

    mean = (1 - lam) m_i + lam m_j and

        cov = (1-lam)^2 S_i + lam^2 S_j
              + lam (1-lam) ((S_i S_j)^{1/2} + (S_j S_i)^{1/2}),

    symmetrized as (C + C^T)/2 (the cross terms are exact transposes
    analytically) and validated strictly PD.
    """
    lam = _check_lambda(lam)
    if lam == 0.0:
        return Gaussian(mu.mean.copy(), mu.cov.copy())
    if lam == 1.0:
        return Gaussian(nu.mean.copy(), nu.cov.copy())
    if mu.dim != nu.dim:
        raise DimensionMismatch(f"dimensions differ: {mu.dim} vs {nu.dim}")
    mean = (1.0 - lam) * mu.mean + lam * nu.mean
    cov = (
        (1.0 - lam) ** 2 * mu.cov
        + lam**2 * nu.cov
        + lam * (1.0 - lam) * (cross_sqrt(mu.cov, nu.cov) + cross_sqrt(nu.cov, mu.cov))
    )
    cov = 0.5 * (cov + cov.T)
    w = np.linalg.eigvalsh(cov)
    if w[0] <= PD_RTOL * max(w[-1], 0.0):
        raise NotPD(f"interpolated covariance lost positive definiteness ({w[0]:.3e})")
    return Gaussian(mean, cov)


def displace(mu: Measure, nu: Measure, lam: float) -> Measure:
    """Dispatch to the class-specific interpolation; MixedClass across variants."""
    if isinstance(mu, DiscreteUniform) and isinstance(nu, DiscreteUniform):
        return displace_discrete(mu, nu, lam)
    if isinstance(mu, Quantile1D) and isinstance(nu, Quantile1D):
        return displace_quantile1d(mu, nu, lam)
    if isinstance(mu, Gaussian) and isinstance(nu, Gaussian):
        return displace_gaussian(mu, nu, lam)
    raise MixedClass(f"cannot interpolate {type(mu).__name__} with {type(nu).__name__}")
