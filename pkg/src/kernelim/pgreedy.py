"""Greedy node selection by maximal posterior standard deviation.

Each step adds the node with the largest current squared power, then updates
all powers through one new Newton-basis column in O(n * k).  A residual of the
constant-1 validation signal is maintained through the same triangular
recursion and both quantities feed the stopping rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndefiniteKernelError, ZeroPivotError
from .kernels import GbfKernel, kernel_column, kernel_diag
from .spectral import Spectrum

DEFAULT_TOLERANCE = 1e-12

# Pivots below 10 eps times the largest initial squared power are numerically
# exhausted; stepping on them would divide rounding noise by itself.
PIVOT_GUARD_FACTOR = 10 * np.finfo(float).eps


@dataclass(frozen=True)
class SelectorConfig:
    """Budget of new nodes, optional warm-start set, stopping tolerance.

    Ties in the greedy argmax always break to the smallest node id.
    """

    budget: int
    initial: tuple[int, ...] = ()
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        ini = tuple(int(v) for v in self.initial)
        if len(set(ini)) != len(ini):
            raise ValueError("initial set contains duplicate nodes")
        object.__setattr__(self, "initial", ini)


@dataclass(frozen=True)
class StepRecord:
    node: int
    max_power: float
    max_residual: float


@dataclass
class SelectionState:
    """Running state of a selection: chosen nodes, Newton basis, powers, residual."""

    chosen: list[int]
    newton: np.ndarray            # (n, k) Newton-basis columns at every node
    p2: np.ndarray                # current squared power per node
    residual: np.ndarray          # constant-1 signal minus current interpolant
    history: list[StepRecord] = field(default_factory=list)
    p2_scale: float = 1.0         # max initial squared power, for the pivot guard
    stop_reason: str | None = None

    @property
    def pivot_guard(self) -> float:
        return PIVOT_GUARD_FACTOR * self.p2_scale

    def max_power(self) -> float:
        return float(np.sqrt(max(self.p2.max(), 0.0)))

    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residual)))


def new_state(spectrum: Spectrum, kernel: GbfKernel) -> SelectionState:
    """Fresh state: empty set, squared powers equal to the kernel diagonal."""
    p2 = kernel_diag(spectrum, kernel).copy()
    return SelectionState(
        chosen=[],
        newton=np.zeros((spectrum.n, 0)),
        p2=p2,
        residual=np.ones(spectrum.n),
        p2_scale=float(max(p2.max(), np.finfo(float).tiny)),
    )


def power_update_step(
    state: SelectionState, spectrum: Spectrum, kernel: GbfKernel, w_new: int
) -> SelectionState:
    """Add one node: new Newton column, squared-power and residual downdate.

    Mutates and returns `state`.  The pivot p2(w_new) must sit above the
    numerical guard or the selection is exhausted.
    """
    w_new = int(w_new)
    if w_new in state.chosen:
        raise ValueError(f"node {w_new} is already selected")
    pivot = float(state.p2[w_new])
    if pivot <= state.pivot_guard:
        raise ZeroPivotError(
            f"pivot {pivot:.3e} at node {w_new} is below the guard "
            f"{state.pivot_guard:.3e}; selection is numerically exhausted"
        )
    col = kernel_column(spectrum, kernel, w_new)
    if state.newton.shape[1]:
        col = col - state.newton @ state.newton[w_new]
    newton_col = col / np.sqrt(pivot)

    state.p2 -= newton_col**2
    np.maximum(state.p2, 0.0, out=state.p2)
    # N_k(w_new) = sqrt(pivot) identically, so the downdate cancels exactly.
    state.p2[w_new] = 0.0

    gamma = state.residual[w_new] / newton_col[w_new]
    state.residual -= gamma * newton_col

    state.newton = np.hstack([state.newton, newton_col[:, None]])
    state.chosen.append(w_new)
    state.history.append(
        StepRecord(node=w_new, max_power=state.max_power(), max_residual=state.max_residual())
    )
    return state


def select_nodes(spectrum: Spectrum, kernel: GbfKernel, config: SelectorConfig) -> SelectionState:
    """Run the greedy selection until the budget or a tolerance stop.

    Stops when `budget` nodes beyond the warm-start set are chosen, or when
    the maximal squared power or the maximal absolute residual of the
    constant-1 signal falls below the tolerance.
    """
    if not kernel.is_positive_definite:
        raise IndefiniteKernelError(
            "selection needs a positive definite kernel; clamp the spectrum to proceed"
        )
    if config.budget + len(config.initial) > spectrum.n:
        raise ValueError(
            f"budget {config.budget} plus warm-start size {len(config.initial)} "
            f"exceeds the node count {spectrum.n}"
        )
    state = new_state(spectrum, kernel)
    for w in config.initial:
        power_update_step(state, spectrum, kernel, w)

    unchosen = np.ones(spectrum.n, dtype=bool)
    unchosen[list(state.chosen)] = False
    while len(state.chosen) - len(config.initial) < config.budget:
        masked = np.where(unchosen, state.p2, -np.inf)
        best = float(masked.max())
        if best < config.tolerance:
            state.stop_reason = "power-tolerance"
            return state
        if state.max_residual() < config.tolerance:
            state.stop_reason = "residual-tolerance"
            return state
        if best <= state.pivot_guard:
            state.stop_reason = "numerical-exhaustion"
            return state
        w = int(np.argmax(masked))  # first maximum = smallest id among ties
        power_update_step(state, spectrum, kernel, w)
        unchosen[w] = False
    state.stop_reason = "budget"
    return state
