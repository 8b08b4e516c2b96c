"""Exception types shared across the package.

Every named failure mode raises a distinct class so callers (and the CLI)
can tell input problems apart from numerical ones.
"""


class PawbarError(Exception):
    """Base class for all package errors."""


# -- linear algebra ---------------------------------------------------------

class NotSymmetric(PawbarError):
    """Matrix violates the symmetry tolerance."""


class NotPSD(PawbarError):
    """Matrix has a significantly negative eigenvalue."""


class Singular(PawbarError):
    """Matrix is not strictly positive definite."""


class DidNotConverge(PawbarError):
    """An iterative computation exceeded its iteration cap."""

    def __init__(self, message: str, iterations: int | None = None,
                 residual: float | None = None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


# -- measures ---------------------------------------------------------------

class SchemaError(PawbarError):
    """Malformed serialized document; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DuplicatePoints(PawbarError):
    """Discrete support points are not pairwise distinct."""


class NonMonotoneQuantiles(PawbarError):
    """Quantile vector is not non-decreasing."""


class NotPD(PawbarError):
    """Covariance is not symmetric positive definite."""


class DimensionMismatch(PawbarError):
    """Operands live in different ambient dimensions."""


# -- transport / interpolation ----------------------------------------------

class SizeMismatch(PawbarError):
    """Operands have different support / quantile-grid sizes."""


class MixedClass(PawbarError):
    """Operation across different measure classes is out of scope."""


class DegenerateOutput(PawbarError):
    """Interpolated support points collided; signals an assignment tie."""


# -- graph ------------------------------------------------------------------

class NotStronglyConnected(PawbarError):
    """Directed interaction graph is not strongly connected."""


class NotConnected(PawbarError):
    """Undirected interaction graph is not connected."""


class BadWeight(PawbarError):
    """Edge weight outside the open interval (0, 1)."""


class BadProbability(PawbarError):
    """Edge selection probabilities are not a positive probability vector."""


class BadEdge(PawbarError):
    """Self-loop, duplicate edge, or out-of-range endpoint."""


# -- simulation / barycenter --------------------------------------------------

class NonHomogeneous(PawbarError):
    """Agents must all hold measures of the same class and size."""


class TooLarge(PawbarError):
    """Instance exceeds the brute-force enumeration guard."""
