import numpy as np
import pytest

from pawbar.graph import DIRECTED, SYMMETRIC, Edge, InteractionGraph
from pawbar.measures import DiscreteUniform, Gaussian, Quantile1D


def random_spd(rng: np.random.Generator, dim: int, eig_low=0.1, eig_high=10.0) -> np.ndarray:
    """Random SPD matrix with eigenvalues drawn from [eig_low, eig_high]."""
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    w = rng.uniform(eig_low, eig_high, dim)
    s = (q * w) @ q.T
    return 0.5 * (s + s.T)


def random_discrete(rng: np.random.Generator, n_points: int, dim: int, scale=1.0,
                    offset=0.0) -> DiscreteUniform:
    return DiscreteUniform(offset + scale * rng.normal(size=(n_points, dim)))


def random_quantile(rng: np.random.Generator, m: int, scale=1.0, offset=0.0) -> Quantile1D:
    return Quantile1D(np.sort(offset + scale * rng.normal(size=m)))


def random_gaussian(rng: np.random.Generator, dim: int, eig_low=0.1, eig_high=10.0) -> Gaussian:
    return Gaussian(rng.normal(size=dim), random_spd(rng, dim, eig_low, eig_high))


def directed_cycle(n: int, weight=0.6) -> InteractionGraph:
    edges = [Edge(k, (k + 1) % n, weight, 1.0 / n) for k in range(n)]
    return InteractionGraph(n, DIRECTED, edges)


def symmetric_line(n: int) -> InteractionGraph:
    edges = [Edge(k, k + 1, 0.5, 1.0 / (n - 1)) for k in range(n - 1)]
    return InteractionGraph(n, SYMMETRIC, edges)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
