"""Dense symmetric linear algebra for the Gaussian measure class.

Spectral decompositions, SPD square roots / inverse square roots, and the
square root of a product of two SPD matrices.  Everything here is a pure
function of small (d <= a few hundred) dense matrices.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DidNotConverge, NotPSD, NotSymmetric, Singular

# Elementwise symmetry tolerance: |S[p,q] - S[q,p]| <= SYM_RTOL * (1 + |S[p,q]|).
SYM_RTOL = 1e-12

# Eigenvalues in [-PSD_CLAMP_RTOL * ||S||_F, 0) are treated as round-off and
# clamped to zero; anything lower is a genuine PSD violation.
PSD_CLAMP_RTOL = 1e-10

# Strict positive definiteness: smallest eigenvalue must exceed
# PD_RTOL * largest eigenvalue.
PD_RTOL = 1e-12


class SpectralDecomposition(NamedTuple):
    """Eigenvalues in non-decreasing order, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def frobenius_norm(m: np.ndarray) -> float:
    """sqrt of the sum of squared entries."""
    m = np.asarray(m, dtype=float)
    return float(np.sqrt(np.sum(m * m)))


def check_symmetric(s: np.ndarray, rtol: float = SYM_RTOL) -> None:
    """Raise NotSymmetric unless s is square and symmetric within tolerance."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {s.shape}")
    if not np.all(np.abs(s - s.T) <= rtol * (1.0 + np.abs(s))):
        p, q = np.unravel_index(np.argmax(np.abs(s - s.T)), s.shape)
        raise NotSymmetric(
            f"entry ({p},{q}) differs from its transpose by {abs(s[p, q] - s[q, p]):.3e}"
        )


def sym_eig(s: np.ndarray) -> SpectralDecomposition:
    """Spectral decomposition S = V diag(w) V^T of a symmetric matrix.

    Eigenvalues come back in non-decreasing order.  Raises NotSymmetric on
    asymmetric input and DidNotConverge if the underlying iteration fails.
    """
    s = np.asarray(s, dtype=float)
    check_symmetric(s)
    try:
        w, v = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise DidNotConverge(f"eigendecomposition failed: {exc}") from exc
    return SpectralDecomposition(w, v)


def _spectral_map(s: np.ndarray, fn) -> np.ndarray:
    """Apply fn to the eigenvalues of s and rebuild a symmetric matrix."""
    w, v = sym_eig(s)
    r = (v * fn(w)) @ v.T
    return 0.5 * (r + r.T)


def sqrt_spd(s: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root R with R @ R == S.

    Eigenvalues in [-1e-10 * ||S||_F, 0) are clamped to zero; anything more
    negative raises NotPSD.
    """
    s = np.asarray(s, dtype=float)
    w, v = sym_eig(s)
    floor = -PSD_CLAMP_RTOL * frobenius_norm(s)
    if w[0] < floor:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} below clamp threshold {floor:.3e}")
    w = np.maximum(w, 0.0)
    r = (v * np.sqrt(w)) @ v.T
    return 0.5 * (r + r.T)


def inv_sqrt_spd(s: np.ndarray) -> np.ndarray:
    """Symmetric PD inverse square root R with R @ S @ R == I."""
    s = np.asarray(s, dtype=float)
    w, v = sym_eig(s)
    if w[0] <= PD_RTOL * w[-1]:
        raise Singular(
            f"smallest eigenvalue {w[0]:.3e} not above {PD_RTOL:g} * largest {w[-1]:.3e}"
        )
    r = (v / np.sqrt(w)) @ v.T
    return 0.5 * (r + r.T)


def _sqrt_pair(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(S^{1/2}, S^{-1/2}) from a single decomposition; S must be strictly PD."""
    w, v = sym_eig(s)
    if w[0] <= PD_RTOL * w[-1]:
        raise Singular(
            f"smallest eigenvalue {w[0]:.3e} not above {PD_RTOL:g} * largest {w[-1]:.3e}"
        )
    sq = np.sqrt(w)
    r = (v * sq) @ v.T
    rinv = (v / sq) @ v.T
    return 0.5 * (r + r.T), 0.5 * (rinv + rinv.T)


def cross_sqrt(si: np.ndarray, sj: np.ndarray) -> np.ndarray:
    """The square root (Si Sj)^{1/2} of a product of SPD matrices.

    Computed through the similarity identity

        (Si Sj)^{1/2} = Si^{1/2} (Si^{1/2} Sj Si^{1/2})^{1/2} Si^{-1/2},

    which yields the unique square root with nonnegative spectrum.  The result
    is generally not symmetric, but (Si Sj)^{1/2} + (Sj Si)^{1/2} is.
    Requires Si strictly PD and Sj PSD.
    """
    si = np.asarray(si, dtype=float)
    sj = np.asarray(sj, dtype=float)
    if si.shape != sj.shape:
        raise Singular(f"shape mismatch {si.shape} vs {sj.shape}")
    r, rinv = _sqrt_pair(si)
    inner = r @ sj @ r
    inner = 0.5 * (inner + inner.T)
    return r @ sqrt_spd(inner) @ rinv
