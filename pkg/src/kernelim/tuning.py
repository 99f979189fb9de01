"""Kernel parameter selection by k-fold cross-validation over log-spaced grids."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import KernelimError, NotPositiveDefiniteError
from .gpr import fit_coefficients
from .kernels import DIFFUSION, SPLINE, build_kernel, kernel_matrix
from .spectral import Spectrum

GRID_PARAMETERS = {DIFFUSION: ("t",), SPLINE: ("eps", "s")}


def log_grid(lo: float, hi: float, count: int) -> np.ndarray:
    """`count` logarithmically equally spaced values from lo to hi.

    Both endpoints must be nonzero and share a sign; the sign is preserved and
    the endpoints are returned exactly.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if lo == 0 or hi == 0 or (lo > 0) != (hi > 0):
        raise ValueError(f"grid endpoints must be nonzero with equal signs, got [{lo}, {hi}]")
    if count == 1:
        return np.array([float(lo)])
    sign = 1.0 if lo > 0 else -1.0
    vals = sign * 10.0 ** np.linspace(np.log10(abs(lo)), np.log10(abs(hi)), count)
    vals[0], vals[-1] = lo, hi
    return vals


def kfold_partition(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Seeded partition of 0..n-1 into `folds` parts with sizes differing by at most 1."""
    if not 2 <= folds <= n:
        raise ValueError(f"folds must be in 2..{n}, got {folds}")
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(perm, folds)]


@dataclass(frozen=True)
class CvSpec:
    """Cross-validation setup: fold count, seed, per-parameter (lo, hi, count) grids."""

    folds: int
    seed: int
    grids: dict
    target: np.ndarray | None = None   # defaults to the constant-1 signal
    metric: str = "mae"

    def __post_init__(self):
        if self.metric not in ("mae", "rmse"):
            raise ValueError(f"metric must be 'mae' or 'rmse', got {self.metric!r}")


@dataclass(frozen=True)
class GridPointScore:
    params: dict
    score: float
    fold_errors: tuple[float, ...]


@dataclass(frozen=True)
class CvResult:
    best_params: dict
    best_score: float
    table: tuple[GridPointScore, ...] = field(repr=False)


def _target(spec: CvSpec, n: int) -> np.ndarray:
    if spec.target is None:
        return np.ones(n)
    t = np.asarray(spec.target, dtype=float)
    if t.shape != (n,):
        raise ValueError(f"target signal must have length {n}")
    return t


def _cv_error_folds(spectrum, family, params, spec, folds, target, jitter):
    """Per-fold errors, or None when the point is unusable (scores +inf)."""
    try:
        kern = build_kernel(family, params, spectrum)
    except KernelimError:
        return None
    if not kern.is_positive_definite:
        return None
    errors = []
    for fold in folds:
        train = np.setdiff1d(np.arange(spectrum.n), fold)
        k_w = kernel_matrix(spectrum, kern, train, train)
        try:
            coeff = fit_coefficients(k_w, target[train], sigma2=jitter)
        except NotPositiveDefiniteError:
            return None
        pred = kernel_matrix(spectrum, kern, None, train) @ coeff
        resid = target - pred
        err = float(np.mean(np.abs(resid))) if spec.metric == "mae" else float(
            np.sqrt(np.mean(resid**2))
        )
        if not np.isfinite(err):
            return None
        errors.append(err)
    return errors


def cv_error(spectrum: Spectrum, family: str, params: dict, spec: CvSpec, jitter: float = 0.0) -> float:
    """Mean error of sigma=0 fold-complement interpolants of the target signal.

    Every fold in turn is held out: the interpolant is fitted on the remaining
    nodes and the error is measured over the entire graph.  Unusable parameter
    points (singular, indefinite, overflowing, or failing to factorize) score
    +inf instead of raising.
    """
    folds = kfold_partition(spectrum.n, spec.folds, spec.seed)
    target = _target(spec, spectrum.n)
    errors = _cv_error_folds(spectrum, family, params, spec, folds, target, jitter)
    return float("inf") if errors is None else float(np.mean(errors))


def grid_search(spectrum: Spectrum, family: str, spec: CvSpec, jitter: float = 0.0) -> CvResult:
    """Evaluate cv_error over the full Cartesian grid and return the argmin.

    Grid points iterate in row-major order over the family's documented
    parameter order; the first minimum wins ties.
    """
    if family not in GRID_PARAMETERS:
        raise ValueError(f"grid search supports {sorted(GRID_PARAMETERS)}, not {family!r}")
    names = GRID_PARAMETERS[family]
    missing = [p for p in names if p not in spec.grids]
    if missing:
        raise ValueError(f"missing grid for parameter(s) {missing}")
    axes = [log_grid(*spec.grids[p]) for p in names]
    folds = kfold_partition(spectrum.n, spec.folds, spec.seed)
    target = _target(spec, spectrum.n)

    table = []
    for values in itertools.product(*axes):
        params = dict(zip(names, (float(v) for v in values)))
        errs = _cv_error_folds(spectrum, family, params, spec, folds, target, jitter)
        if errs is None:
            table.append(GridPointScore(params=params, score=float("inf"), fold_errors=()))
        else:
            table.append(
                GridPointScore(params=params, score=float(np.mean(errs)), fold_errors=tuple(errs))
            )
    best = min(table, key=lambda row: row.score)
    if not np.isfinite(best.score):
        raise KernelimError("every grid point failed; nothing to select")
    return CvResult(best_params=dict(best.params), best_score=best.score, table=tuple(table))
