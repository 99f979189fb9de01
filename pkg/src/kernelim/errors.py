"""Exception types shared across the library."""


class KernelimError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(KernelimError):
    """A graph file or edge list violates the format contract."""


class KernelSpecError(KernelimError):
    """A kernel specification string could not be parsed."""


class SplineSingularityError(KernelimError):
    """eps + lambda_k = 0 for some eigenvalue; spline coefficients undefined."""


class ComplexPowerError(KernelimError):
    """Negative base with non-integer exponent in the spline coefficient map."""


class CoefficientOverflowError(KernelimError):
    """Spectral coefficients overflowed to non-finite values."""


class IndefiniteKernelError(KernelimError):
    """Operation requires a positive definite kernel (all spectral coefficients > 0)."""


class NotPositiveDefiniteError(KernelimError):
    """Cholesky factorization of the kernel submatrix failed."""


class ZeroPivotError(KernelimError):
    """Greedy pivot fell below the numerical guard; the selection is exhausted."""


class NotSymmetricError(KernelimError):
    """Matrix expected to be symmetric is not."""


class SolverError(KernelimError):
    """The dense eigensolver failed to converge."""


class ConvergenceError(KernelimError):
    """An iterative method exceeded its iteration limit."""
