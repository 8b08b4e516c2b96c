"""Exact 2-Wasserstein distances and optimal couplings within each class.

* discrete uniform: exact linear assignment on the squared-Euclidean cost
  matrix (augmenting-path / Jonker-Volgenant style, O(N^3)),
* 1-D quantile vectors: monotone matching of the quantile grids,
* Gaussians: the closed form
  W2^2 = |m1 - m2|^2 + tr(S1 + S2 - 2 (S1^{1/2} S2 S1^{1/2})^{1/2}).

Couplings across different measure classes are out of scope and raise
MixedClass.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, MixedClass, SizeMismatch
from .linalg import sqrt_spd
from .measures import DiscreteUniform, Gaussian, Measure, Quantile1D


def solve_assignment(cost: np.ndarray) -> np.ndarray:
    """Exact minimum-cost assignment on a square cost matrix.

    Shortest augmenting path with row/column potentials; ties are broken
    toward the lowest column index, so the result is deterministic.
    Returns sigma with sigma[row] = assigned column.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise SizeMismatch(f"cost matrix must be square, got {cost.shape}")
    n = cost.shape[0]
    rows = cost.tolist()
    inf = math.inf
    u = [0.0] * n            # row potentials
    v = [0.0] * (n + 1)      # column potentials (index n = virtual column)
    match = [-1] * (n + 1)   # match[col] = row, -1 while free
    way = [0] * (n + 1)      # predecessor column on the alternating path
    for i in range(n):
        match[n] = i
        j0 = n
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            row = rows[i0]
            ui0 = u[i0]
            delta = inf
            j1 = -1
            for j in range(n):
                if not used[j]:
                    cur = row[j] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == -1:
                break
        while j0 != n:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    sigma = [0] * n
    for j in range(n):
        sigma[match[j]] = j
    return np.array(sigma, dtype=np.intp)


def squared_cost_matrix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """cost[k, l] = |x_k - y_l|^2 for point arrays of shape (N, d)."""
    diff = x[:, None, :] - y[None, :, :]
    return np.sum(diff * diff, axis=-1)


def w2_discrete(mu: DiscreteUniform, nu: DiscreteUniform) -> tuple[float, np.ndarray]:
    """(distance, optimal permutation) between discrete uniform measures.

    sigma minimizes (1/N) sum_k |x_k - y_sigma(k)|^2 exactly; the distance is
    the square root of that minimum.
    """
    if mu.n_points != nu.n_points or mu.dim != nu.dim:
        raise SizeMismatch(
            f"support mismatch: {mu.n_points}x{mu.dim} vs {nu.n_points}x{nu.dim}"
        )
    cost = squared_cost_matrix(mu.points, nu.points)
    sigma = solve_assignment(cost)
    total = float(sum(cost[k][sigma[k]] for k in range(mu.n_points)))
    return math.sqrt(max(total, 0.0) / mu.n_points), sigma


def w2_quantile1d(mu: Quantile1D, nu: Quantile1D) -> float:
    """Distance between quantile vectors: sorted (monotone) matching."""
    if mu.n_levels != nu.n_levels:
        raise SizeMismatch(f"quantile grids differ: {mu.n_levels} vs {nu.n_levels}")
    d = mu.quantiles - nu.quantiles
    return float(np.sqrt(np.mean(d * d)))


def w2_gaussian(mu: Gaussian, nu: Gaussian) -> float:
    """Closed-form distance between Gaussian measures.

    The trace term is clamped at zero before the square root to absorb
    round-off on (near-)equal inputs.
    """
    if mu.dim != nu.dim:
        raise DimensionMismatch(f"dimensions differ: {mu.dim} vs {nu.dim}")
    dm = mu.mean - nu.mean
    r = sqrt_spd(mu.cov)
    inner = r @ nu.cov @ r
    inner = 0.5 * (inner + inner.T)
    cross = sqrt_spd(inner)
    trace_term = float(np.trace(mu.cov) + np.trace(nu.cov) - 2.0 * np.trace(cross))
    return math.sqrt(float(dm @ dm) + max(trace_term, 0.0))


def w2(mu: Measure, nu: Measure) -> float:
    """Dispatch to the class-specific distance; MixedClass across variants."""
    if isinstance(mu, DiscreteUniform) and isinstance(nu, DiscreteUniform):
        return w2_discrete(mu, nu)[0]
    if isinstance(mu, Quantile1D) and isinstance(nu, Quantile1D):
        return w2_quantile1d(mu, nu)
    if isinstance(mu, Gaussian) and isinstance(nu, Gaussian):
        return w2_gaussian(mu, nu)
    raise MixedClass(
        f"cannot couple {type(mu).__name__} with {type(nu).__name__}"
    )
