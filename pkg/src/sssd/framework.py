"""Split-step composition of exactly solved stage flows.

Within one step of size ``delta`` the state is threaded through the stages in
order: the first stage starts from the left-endpoint state, every later stage
starts from the previous stage's endpoint, and all stages see the same frozen
value, namely the left-endpoint state.  Only the last stage may carry noise.

Stage flows are written with numpy ufuncs so one call advances a whole
ensemble of paths at once; with scalar input they return numpy scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from .core import BrownianIncrements, PathEnsemble, TimeGrid

__all__ = [
    "DomainError",
    "StepSizeError",
    "StageFlow",
    "ComposedScheme",
    "step",
    "simulate_path",
    "simulate_ensemble",
]

Flow = Callable[..., object]


class DomainError(ValueError):
    """A state or frozen argument lies outside the region where a flow is defined."""


class StepSizeError(ValueError):
    """The step size violates a scheme's admissibility bound."""


@dataclass(frozen=True)
class StageFlow:
    """Closed-form solution map of one split fragment over a step.

    ``flow(entry, frozen, delta, dW)`` returns the fragment's endpoint.
    ``drift(state, frozen)``, when given, is the fragment's frozen-coefficient
    drift; summed over the stages at ``frozen == state`` it must reproduce the
    drift of the full equation.
    """

    name: str
    flow: Flow
    kind: Literal["deterministic", "stochastic"] = "deterministic"
    drift: Optional[Callable[..., object]] = None

    def __post_init__(self):
        if self.kind not in ("deterministic", "stochastic"):
            raise ValueError(f"unknown stage kind {self.kind!r}")

    def __call__(self, entry, frozen, delta, dW=0.0):
        if self.kind == "deterministic":
            return self.flow(entry, frozen, delta, None)
        return self.flow(entry, frozen, delta, dW)


@dataclass(frozen=True)
class ComposedScheme:
    """Ordered stage flows plus the data needed to run them.

    ``lower_bound`` is the closed lower edge of the state domain
    (``-inf`` for unconstrained baselines).  ``max_delta`` is an exclusive
    upper bound on admissible step sizes, with ``max_delta_reason`` quoted
    in the error raised when it is violated.
    """

    stages: tuple
    initial_state: float
    lower_bound: float = 0.0
    max_delta: Optional[float] = None
    max_delta_reason: str = ""
    name: str = ""
    target_drift: Optional[Callable[..., object]] = None

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise ValueError("a scheme needs at least one stage")
        kinds = [s.kind for s in stages]
        if kinds.count("stochastic") > 1:
            raise ValueError("at most one stochastic stage is supported")
        if "stochastic" in kinds and kinds[-1] != "stochastic":
            raise ValueError("the stochastic stage must be the last one")
        object.__setattr__(self, "stages", stages)
        if self.initial_state < self.lower_bound:
            raise DomainError(
                f"initial state {self.initial_state} below domain bound {self.lower_bound}"
            )

    def check_delta(self, delta: float) -> None:
        if self.max_delta is not None and not delta < self.max_delta:
            reason = f" ({self.max_delta_reason})" if self.max_delta_reason else ""
            raise StepSizeError(
                f"step size {delta} violates Δ < {self.max_delta:g}{reason}"
            )

    def step(self, state, delta, dW=0.0):
        frozen = state
        y = state
        for i, stage in enumerate(self.stages):
            if np.any(np.less(y, self.lower_bound)):
                raise DomainError(
                    f"stage {i} ({stage.name}) entered with state "
                    f"{np.min(y)!r} below domain bound {self.lower_bound}"
                )
            y = stage(y, frozen, delta, dW)
        return y

    def split_drift(self, state, frozen):
        """Sum of the stages' frozen-coefficient drifts."""
        total = 0.0
        for stage in self.stages:
            if stage.drift is None:
                raise ValueError(f"stage {stage.name} does not expose its drift")
            total = total + stage.drift(state, frozen)
        return total


def step(scheme: ComposedScheme, state, delta, dW=0.0):
    """One full step of ``scheme``; see ``ComposedScheme.step``."""
    return scheme.step(state, delta, dW)


def simulate_path(
    scheme: ComposedScheme, grid: TimeGrid, increments: BrownianIncrements
) -> np.ndarray:
    if increments.grid != grid:
        raise ValueError(f"increments live on {increments.grid}, expected {grid}")
    if increments.values.ndim != 1:
        raise ValueError("simulate_path takes the increments of a single path")
    scheme.check_delta(grid.delta)
    out = np.empty(grid.n + 1)
    out[0] = scheme.initial_state
    state = np.float64(scheme.initial_state)
    dt = grid.delta
    for k, dw in enumerate(increments.values):
        state = scheme.step(state, dt, dw)
        out[k + 1] = state
    return out


def simulate_ensemble(
    scheme: ComposedScheme,
    increments: BrownianIncrements,
    store_paths: bool = True,
):
    """Advance every row of ``increments`` at once.

    Returns a ``PathEnsemble`` or, with ``store_paths=False``, only the
    terminal states as a 1-D array in path-index order.
    """
    grid = increments.grid
    scheme.check_delta(grid.delta)
    dW = np.atleast_2d(increments.values)
    n_paths = dW.shape[0]
    state = np.full(n_paths, scheme.initial_state, dtype=np.float64)
    if store_paths:
        out = np.empty((n_paths, grid.n + 1))
        out[:, 0] = state
    dt = grid.delta
    if n_paths:
        for k in range(grid.n):
            state = scheme.step(state, dt, dW[:, k])
            if store_paths:
                out[:, k + 1] = state
    if store_paths:
        return PathEnsemble(grid, out)
    return state


def compose(stages: Sequence[StageFlow], initial_state: float, **kwargs) -> ComposedScheme:
    return ComposedScheme(tuple(stages), initial_state, **kwargs)
