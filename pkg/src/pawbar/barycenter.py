"""Centralized Wasserstein-barycenter oracles.

These serve as ground truth against which simulated consensus measures are
checked: a pointwise average for quantile vectors, the SPD fixed-point
iteration for Gaussians, and two discrete oracles (alignment-based and
exhaustive enumeration over permutation tuples).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DidNotConverge, SizeMismatch, TooLarge
from .linalg import _sqrt_pair, frobenius_norm, sqrt_spd
from .measures import DiscreteUniform, Gaussian, Measure, Quantile1D
from .transport import w2, w2_discrete

CONVEX_TOL = 1e-12

# Enumeration guard: N! ** (n-1) <= 576 combinations.
BRUTE_FORCE_MAX_POINTS = 4
BRUTE_FORCE_MAX_MEASURES = 3


@dataclass
class BarycenterProblem:
    """n same-class measures plus a convex weight vector."""

    measures: list[Measure]
    lam: np.ndarray

    def __post_init__(self):
        self.lam = np.atleast_1d(np.asarray(self.lam, dtype=float))
        if len(self.measures) != self.lam.shape[0]:
            raise SizeMismatch(
                f"{len(self.measures)} measures but {self.lam.shape[0]} weights"
            )
        if np.any(self.lam < 0) or abs(float(np.sum(self.lam)) - 1.0) > CONVEX_TOL:
            raise ValueError(
                f"weights must be convex coefficients, got {self.lam.tolist()}"
            )


class AlignedBarycenter(NamedTuple):
    """Candidate barycenter plus whether the pairwise alignments composed
    consistently (the certificate for the close-measures regime)."""

    measure: DiscreteUniform
    consistent: bool


def functional(nu: Measure, prob: BarycenterProblem) -> float:
    """The barycenter objective sum_i lam_i W2(nu, mu_i)^2."""
    return float(sum(l * w2(nu, m) ** 2 for l, m in zip(prob.lam, prob.measures)))


def barycenter_quantile1d(prob: BarycenterProblem) -> Quantile1D:
    """Pointwise weighted average of the quantile vectors (exact barycenter)."""
    grids = [m.quantiles for m in prob.measures]
    width = grids[0].shape[0]
    for q in grids[1:]:
        if q.shape[0] != width:
            raise SizeMismatch(f"quantile grids differ: {width} vs {q.shape[0]}")
    out = np.zeros(width)
    for l, q in zip(prob.lam, grids):
        out += l * q
    return Quantile1D(out)


def gaussian_fixed_point_residual(cov: np.ndarray, prob: BarycenterProblem) -> float:
    """|| S - sum_j lam_j (S^{1/2} Sigma_j S^{1/2})^{1/2} ||_F at S = cov."""
    r = sqrt_spd(cov)
    acc = np.zeros_like(cov)
    for l, m in zip(prob.lam, prob.measures):
        inner = r @ m.cov @ r
        acc += l * sqrt_spd(0.5 * (inner + inner.T))
    return frobenius_norm(cov - acc)


def barycenter_gaussian(
    prob: BarycenterProblem, tol: float = 1e-10, max_iter: int = 1000
) -> Gaussian:
    """Gaussian barycenter via the SPD fixed-point iteration.

    The mean is the weighted average of the means.  The covariance iterates

        S <- S^{-1/2} ( sum_j lam_j (S^{1/2} Sigma_j S^{1/2})^{1/2} )^2 S^{-1/2}

    from S_0 = sum_j lam_j Sigma_j until the fixed-point residual
    || S - sum_j lam_j (S^{1/2} Sigma_j S^{1/2})^{1/2} ||_F drops to ``tol``.
    """
    lam = prob.lam
    mean = np.zeros(prob.measures[0].dim)
    for l, m in zip(lam, prob.measures):
        mean = mean + l * m.mean
    s = np.zeros((len(mean), len(mean)))
    for l, m in zip(lam, prob.measures):
        s = s + l * m.cov
    residual = math.inf
    for _ in range(max_iter):
        r, rinv = _sqrt_pair(s)
        acc = np.zeros_like(s)
        for l, m in zip(lam, prob.measures):
            inner = r @ m.cov @ r
            acc += l * sqrt_spd(0.5 * (inner + inner.T))
        residual = frobenius_norm(s - acc)
        if residual <= tol:
            return Gaussian(mean, s)
        s = rinv @ acc @ acc @ rinv
        s = 0.5 * (s + s.T)
    raise DidNotConverge(
        f"fixed point residual {residual:.3e} > {tol:g} after {max_iter} iterations",
        iterations=max_iter,
        residual=residual,
    )


def barycenter_discrete_aligned(prob: BarycenterProblem) -> AlignedBarycenter:
    """Align every measure to the first one and average pointwise.

    Point m of the candidate is sum_j lam_j x^j_{tau_j(m)} with tau_j the
    optimal permutation from measure 0 to measure j.  The candidate is
    certified (``consistent=True``) only when every pairwise optimal
    permutation factors through the alignments, i.e. for all pairs (j, k)
    sigma_{jk}(tau_j(m)) == tau_k(m); otherwise it is returned with the flag
    down, signalling the measures were not close enough for the alignment to
    be globally coherent.
    """
    measures = prob.measures
    n = len(measures)
    npts = measures[0].n_points
    tau = [np.arange(npts)]
    for j in range(1, n):
        tau.append(w2_discrete(measures[0], measures[j])[1])
    pts = np.zeros_like(measures[0].points)
    for l, m, t in zip(prob.lam, measures, tau):
        pts += l * m.points[t]
    consistent = True
    for j in range(1, n):
        for k in range(j + 1, n):
            sigma_jk = w2_discrete(measures[j], measures[k])[1]
            if not np.array_equal(sigma_jk[tau[j]], tau[k]):
                consistent = False
    return AlignedBarycenter(DiscreteUniform(pts), consistent)


def barycenter_discrete_bruteforce(
    prob: BarycenterProblem,
) -> tuple[DiscreteUniform, float]:
    """Exact barycenter over N-point discrete uniform measures by enumeration.

    For every tuple of permutations (sigma_2, ..., sigma_n) relative to
    measure 1, the optimal support under that matching is the pointwise
    weighted mean (first-order condition); the returned measure is the tuple
    minimizing the objective, together with its value.  Guarded to
    N <= 4, n <= 3 (at most 576 tuples).
    """
    measures = prob.measures
    n = len(measures)
    npts = measures[0].n_points
    if npts > BRUTE_FORCE_MAX_POINTS or n > BRUTE_FORCE_MAX_MEASURES:
        raise TooLarge(
            f"brute force limited to N <= {BRUTE_FORCE_MAX_POINTS} points and "
            f"n <= {BRUTE_FORCE_MAX_MEASURES} measures, got N={npts}, n={n}"
        )
    lam = prob.lam
    identity = tuple(range(npts))
    best_value = math.inf
    best_points = None
    for tail in itertools.product(itertools.permutations(range(npts)), repeat=n - 1):
        sigmas = (identity,) + tail
        pts = np.zeros_like(measures[0].points)
        for l, m, sg in zip(lam, measures, sigmas):
            pts += l * m.points[list(sg)]
        value = 0.0
        for l, m, sg in zip(lam, measures, sigmas):
            diff = pts - m.points[list(sg)]
            value += l * float(np.mean(np.sum(diff * diff, axis=1)))
        if value < best_value:
            best_value = value
            best_points = pts
    return DiscreteUniform(best_points), best_value
