"""Laplacian eigendecomposition, graph Fourier transform, generalized convolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotSymmetricError, SolverError

SIGN_ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition L = U diag(eigenvalues) U^T of a graph Laplacian.

    Eigenvalues are ascending; column k of `eigenvectors` is the orthonormal
    eigenvector for eigenvalue k (the k-th graph Fourier mode).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_signs(u: np.ndarray) -> np.ndarray:
    # First entry above the zero threshold is made positive so repeated runs
    # produce identical bases.
    u = u.copy()
    for k in range(u.shape[1]):
        col = u[:, k]
        nz = np.nonzero(np.abs(col) > SIGN_ZERO_THRESHOLD)[0]
        if nz.size and col[nz[0]] < 0:
            u[:, k] = -col
    return u


def eigendecompose(lap: np.ndarray) -> Spectrum:
    """Full dense eigendecomposition with a deterministic sign convention."""
    lap = np.asarray(lap, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {lap.shape}")
    scale = max(1.0, float(np.max(np.abs(lap))) if lap.size else 1.0)
    if float(np.max(np.abs(lap - lap.T))) > 1e-10 * scale:
        raise NotSymmetricError("matrix is not symmetric within 1e-10")
    try:
        lam, u = scipy.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"dense symmetric eigensolver failed: {exc}") from None
    return Spectrum(eigenvalues=lam, eigenvectors=_fix_signs(u))


def gft(s: Spectrum, x: np.ndarray, direction: str = "forward") -> np.ndarray:
    """Graph Fourier transform U^T x (forward) or its inverse U x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (s.n,):
        raise ValueError(f"signal length {x.shape} does not match n={s.n}")
    if direction == "forward":
        return s.eigenvectors.T @ x
    if direction == "inverse":
        return s.eigenvectors @ x
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def convolve(s: Spectrum, y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Generalized convolution: filter x by the Fourier coefficients of y."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != (s.n,) or x.shape != (s.n,):
        raise ValueError(f"both signals must have length n={s.n}")
    u = s.eigenvectors
    return u @ ((u.T @ y) * (u.T @ x))
