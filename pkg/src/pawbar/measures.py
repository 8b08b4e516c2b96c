"""The three measure classes, their validation, and the JSON wire schema.

A measure is one of

* :class:`DiscreteUniform` -- uniform weights on N distinct points in R^d,
* :class:`Quantile1D` -- a non-decreasing vector of M quantile values read
  at the midpoint levels u_k = (k - 1/2) / M,
* :class:`Gaussian` -- mean vector plus strictly PD covariance.

Instances are plain dataclasses and are treated as immutable values
throughout the package; validation is explicit via :func:`validate_measure`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DuplicatePoints,
    NonMonotoneQuantiles,
    NotPD,
    SchemaError,
)

# Two support points closer than this (Euclidean) count as duplicates.
DISTINCT_TOL = 1e-12

# Strict PD requirement on covariances: min eigenvalue > PD_RTOL * max.
PD_RTOL = 1e-12

SYM_RTOL = 1e-12


@dataclass(eq=False)
class DiscreteUniform:
    """Uniform measure on N points in R^d; ``points`` has shape (N, d)."""

    points: np.ndarray

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(eq=False)
class Quantile1D:
    """Quantile vector of a 1-D measure on the midpoint grid (k - 1/2) / M."""

    quantiles: np.ndarray

    def __post_init__(self):
        self.quantiles = np.atleast_1d(np.asarray(self.quantiles, dtype=float))

    @property
    def n_levels(self) -> int:
        return self.quantiles.shape[0]


@dataclass(eq=False)
class Gaussian:
    """Gaussian measure N(mean, cov) with strictly PD covariance."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        self.mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        self.cov = np.atleast_2d(np.asarray(self.cov, dtype=float))

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


Measure = Union[DiscreteUniform, Quantile1D, Gaussian]


def min_pairwise_distance(points: np.ndarray) -> float:
    """Smallest Euclidean distance between two rows; inf for a single row."""
    n = points.shape[0]
    if n < 2:
        return math.inf
    diff = points[:, None, :] - points[None, :, :]
    d2 = np.sum(diff * diff, axis=-1)
    d2[np.diag_indices(n)] = math.inf
    return float(np.sqrt(np.min(d2)))


def validate_measure(m: Measure) -> None:
    """Check the variant invariants; raise the named error on violation.

    Raises DuplicatePoints, NonMonotoneQuantiles, or NotPD.
    """
    if isinstance(m, DiscreteUniform):
        if m.points.ndim != 2 or m.points.shape[0] < 1 or m.points.shape[1] < 1:
            raise DuplicatePoints(f"points must be a nonempty (N, d) array, got {m.points.shape}")
        if min_pairwise_distance(m.points) <= DISTINCT_TOL:
            raise DuplicatePoints(
                f"support points closer than {DISTINCT_TOL:g} (must be pairwise distinct)"
            )
    elif isinstance(m, Quantile1D):
        q = m.quantiles
        if q.ndim != 1 or q.shape[0] < 1:
            raise NonMonotoneQuantiles(f"quantiles must be a nonempty vector, got shape {q.shape}")
        if np.any(np.diff(q) < 0):
            raise NonMonotoneQuantiles("quantile vector is not non-decreasing")
    elif isinstance(m, Gaussian):
        d = m.mean.shape[0]
        if m.cov.shape != (d, d):
            raise NotPD(f"covariance shape {m.cov.shape} does not match mean dimension {d}")
        if not np.all(np.abs(m.cov - m.cov.T) <= SYM_RTOL * (1.0 + np.abs(m.cov))):
            raise NotPD("covariance is not symmetric")
        w = np.linalg.eigvalsh(m.cov)
        if w[0] <= PD_RTOL * max(w[-1], 0.0):
            raise NotPD(
                f"covariance not strictly PD: eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}]"
            )
    else:
        raise TypeError(f"not a measure: {type(m).__name__}")


# -- JSON schema --------------------------------------------------------------
#
#   {"type": "discrete",   "points": [[f64, ...], ...]}
# | {"type": "quantile1d", "quantiles": [f64, ...]}
# | {"type": "gaussian",   "mean": [f64, ...], "cov": [[f64, ...], ...]}


def _require_number(x, path: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(x).__name__}")
    if not math.isfinite(x):
        raise SchemaError(path, f"non-finite value {x!r}")
    return float(x)


def _number_vector(x, path: str) -> list[float]:
    if not isinstance(x, list) or not x:
        raise SchemaError(path, "expected a nonempty array of numbers")
    return [_require_number(v, f"{path}[{i}]") for i, v in enumerate(x)]


def _number_matrix(x, path: str) -> list[list[float]]:
    if not isinstance(x, list) or not x:
        raise SchemaError(path, "expected a nonempty array of rows")
    rows = [_number_vector(r, f"{path}[{i}]") for i, r in enumerate(x)]
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise SchemaError(f"{path}[{i}]", f"row length {len(r)} != {width}")
    return rows


def measure_from_obj(obj, path: str = "$") -> Measure:
    """Build a Measure from a decoded JSON object (structural checks only)."""
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    kind = obj.get("type")
    if kind == "discrete":
        _reject_unknown(obj, {"type", "points"}, path)
        return DiscreteUniform(np.array(_number_matrix(obj.get("points"), f"{path}.points")))
    if kind == "quantile1d":
        _reject_unknown(obj, {"type", "quantiles"}, path)
        return Quantile1D(np.array(_number_vector(obj.get("quantiles"), f"{path}.quantiles")))
    if kind == "gaussian":
        _reject_unknown(obj, {"type", "mean", "cov"}, path)
        mean = _number_vector(obj.get("mean"), f"{path}.mean")
        cov = _number_matrix(obj.get("cov"), f"{path}.cov")
        if len(cov) != len(mean) or len(cov[0]) != len(mean):
            raise SchemaError(f"{path}.cov", f"expected {len(mean)}x{len(mean)} matrix")
        return Gaussian(np.array(mean), np.array(cov))
    raise SchemaError(f"{path}.type", f"unknown measure type {kind!r}")


def _reject_unknown(obj: dict, allowed: set, path: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"{path}.{sorted(extra)[0]}", "unknown field")


def measure_to_obj(m: Measure):
    """The JSON-ready dict for a measure."""
    if isinstance(m, DiscreteUniform):
        return {"type": "discrete", "points": m.points.tolist()}
    if isinstance(m, Quantile1D):
        return {"type": "quantile1d", "quantiles": m.quantiles.tolist()}
    if isinstance(m, Gaussian):
        return {"type": "gaussian", "mean": m.mean.tolist(), "cov": m.cov.tolist()}
    raise TypeError(f"not a measure: {type(m).__name__}")


def parse_measure(data: bytes | str) -> Measure:
    """Parse one measure from a JSON document; SchemaError names the bad field."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return measure_from_obj(obj)


def serialize_measure(m: Measure) -> bytes:
    """Serialize a measure so that parse(serialize(m)) == m bit-exactly.

    Floats are written with Python's shortest round-trip repr, which decodes
    back to the identical binary value.
    """
    return json.dumps(measure_to_obj(m)).encode("utf-8")


def measures_equal(a: Measure, b: Measure) -> bool:
    """Exact (bitwise value) equality of two measures."""
    if type(a) is not type(b):
        return False
    if isinstance(a, DiscreteUniform):
        return a.points.shape == b.points.shape and bool(np.all(a.points == b.points))
    if isinstance(a, Quantile1D):
        return a.quantiles.shape == b.quantiles.shape and bool(
            np.all(a.quantiles == b.quantiles)
        )
    return (
        a.mean.shape == b.mean.shape
        and a.cov.shape == b.cov.shape
        and bool(np.all(a.mean == b.mean))
        and bool(np.all(a.cov == b.cov))
    )


# -- standard normal quantile function ----------------------------------------

# Rational approximation coefficients (Acklam); peak relative error ~1.15e-9,
# tightened below machine precision by one Halley step against erfc.
_PPF_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
          1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_PPF_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
          6.680131188771972e+01, -1.328068155288572e+01)
_PPF_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
          -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_PPF_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)
_PPF_SPLIT = 0.02425


def _norm_ppf_half(p: float) -> float:
    """Quantile for p in (0, 1/2]; the refinement stays in the accurate tail."""
    a, b, c, d = _PPF_A, _PPF_B, _PPF_C, _PPF_D
    if p < _PPF_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    else:
        q = p - 0.5
        r = q * q
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    # One Halley refinement step against the exact CDF.
    err = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = err * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def norm_ppf(p: float) -> float:
    """Standard normal quantile function on (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile level must lie in (0, 1), got {p}")
    if p > 0.5:
        return -_norm_ppf_half(1.0 - p)  # 1 - p is exact for p >= 1/2
    return _norm_ppf_half(p)


def gaussian1d_to_quantile1d(mean: float, sd: float, m: int) -> Quantile1D:
    """Quantile vector of N(mean, sd^2) on the midpoint grid with M levels."""
    if sd <= 0:
        raise ValueError(f"standard deviation must be positive, got {sd}")
    if m < 2:
        raise ValueError(f"need at least 2 quantile levels, got {m}")
    levels = (np.arange(m) + 0.5) / m
    return Quantile1D(np.array([mean + sd * norm_ppf(u) for u in levels]))
