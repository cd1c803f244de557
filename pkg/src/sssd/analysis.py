"""Monte Carlo harness: coupled strong-error studies, moment and positivity audits.

Strong errors are measured against the same scheme run on the finest grid,
driven by the same Brownian path: fine increments are drawn once per path
and every coarser level consumes their block sums.  Per-path results are
reduced in path-index order, so reports are bit-stable for a given seed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import BrownianIncrements, PathEnsemble, TimeGrid, coarsen_increments, sample_paths
from .framework import ComposedScheme, simulate_ensemble
from .schemes import (
    AitSahaliaParams,
    SplitConfig,
    ait_sahalia_scheme,
    drift_implicit_step,
    euler_maruyama_step,
)

__all__ = [
    "LevelError",
    "ConvergenceReport",
    "MomentReport",
    "PositivityReport",
    "ContrastRow",
    "ContrastSummary",
    "fit_order",
    "coupled_levels",
    "strong_error_study",
    "moment_study",
    "positivity_audit",
    "baseline_contrast",
]

CONVERGENCE_COLUMNS = ("delta", "rms_error", "mean_abs_error", "n_paths", "seed")
MOMENT_COLUMNS = ("p", "delta", "moment", "std_error", "n_paths", "seed")
POSITIVITY_COLUMNS = ("paths", "steps", "min_state", "violations", "nonfinite", "strict")
CONTRAST_COLUMNS = (
    "scheme", "paths", "steps", "violations", "nonfinite", "failed_paths", "min_state", "delta", "seed",
)


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


class _Report:
    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


@dataclass(frozen=True)
class LevelError:
    delta: float
    rms_error: float
    mean_abs_error: float


@dataclass(frozen=True)
class ConvergenceReport(_Report):
    levels: tuple
    estimated_order: float
    regression_r2: float
    paths: int
    seed: int
    T: float = 1.0
    finest_n: int = 0
    flags: tuple = ()

    def to_csv(self) -> str:
        return _csv_text(
            CONVERGENCE_COLUMNS,
            [(lv.delta, lv.rms_error, lv.mean_abs_error, self.paths, self.seed) for lv in self.levels],
        )

    def plot_data(self) -> str:
        """Two columns, ``delta rms_error``."""
        return "".join(f"{lv.delta!r} {lv.rms_error!r}\n" for lv in self.levels)


@dataclass(frozen=True)
class MomentPoint:
    delta: float
    moment: float
    std_error: float


@dataclass(frozen=True)
class MomentReport(_Report):
    p: float
    per_delta: tuple
    max_over_deltas: float
    paths: int = 0
    seed: int = 0

    def to_csv(self) -> str:
        return _csv_text(
            MOMENT_COLUMNS,
            [(self.p, m.delta, m.moment, m.std_error, self.paths, self.seed) for m in self.per_delta],
        )

    def plot_data(self) -> str:
        return "".join(f"{m.delta!r} {m.moment!r}\n" for m in self.per_delta)

    @property
    def spread_ratio(self) -> float:
        values = [m.moment for m in self.per_delta]
        return max(values) / min(values)


@dataclass(frozen=True)
class PositivityReport(_Report):
    paths: int
    steps: int
    min_state: float
    violations: int
    nonfinite: int = 0
    strict: bool = True

    def to_csv(self) -> str:
        return _csv_text(POSITIVITY_COLUMNS, [tuple(asdict(self).values())])


@dataclass(frozen=True)
class ContrastRow:
    scheme: str
    paths: int
    steps: int
    violations: int
    nonfinite: int
    failed_paths: int
    min_state: float


@dataclass(frozen=True)
class ContrastSummary(_Report):
    rows: tuple = ()
    delta: float = 0.0
    seed: int = 0

    def row(self, scheme: str) -> ContrastRow:
        for r in self.rows:
            if r.scheme == scheme:
                return r
        raise KeyError(scheme)

    def to_csv(self) -> str:
        return _csv_text(
            CONTRAST_COLUMNS,
            [tuple(asdict(r).values()) + (self.delta, self.seed) for r in self.rows],
        )


def fit_order(deltas: Sequence[float], errors: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope and r^2 of ``log(error)`` against ``log(delta)``."""
    x = np.log(np.asarray(deltas, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    if x.size < 2:
        return math.nan, math.nan
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else math.nan
    return float(slope), r2


def coupled_levels(fine: BrownianIncrements, levels: int) -> Iterator[tuple[int, BrownianIncrements]]:
    """Yield ``(k, increments coarsened by 2**k)`` for ``k = 1 .. levels``."""
    for k in range(1, levels + 1):
        yield k, coarsen_increments(fine, 2**k)


def strong_error_study(
    scheme: ComposedScheme,
    finest_n: int,
    levels: int,
    paths: int,
    seed: int,
    T: float = 1.0,
) -> ConvergenceReport:
    """Terminal strong error of ``scheme`` at steps ``T / (finest_n / 2**k)``.

    The reference for every level is the same scheme on the finest grid.
    Levels with zero error are left out of the order fit and flagged; with
    fewer than two usable levels the order is NaN.
    """
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if finest_n % (2**levels):
        raise ValueError(f"finest_n={finest_n} is not divisible by 2**levels={2**levels}")
    if paths < 2:
        raise ValueError(f"paths must be >= 2, got {paths}")
    grid = TimeGrid(T, finest_n)
    scheme.check_delta(grid.delta * 2**levels)
    fine = sample_paths(seed, paths, grid)
    reference = simulate_ensemble(scheme, fine, store_paths=False)
    totals = fine.totals()
    tol = 1e-12 * max(1.0, float(np.max(np.abs(fine.values).sum(axis=-1))))

    rows = []
    for _, coarse in coupled_levels(fine, levels):
        if np.max(np.abs(coarse.totals() - totals)) > tol:
            raise RuntimeError("coarse increments are not a coarsening of the fine path")
        err = simulate_ensemble(scheme, coarse, store_paths=False) - reference
        rows.append(
            LevelError(
                delta=coarse.grid.delta,
                rms_error=float(np.sqrt(np.mean(err * err))),
                mean_abs_error=float(np.mean(np.abs(err))),
            )
        )
    rows.reverse()

    flags = []
    usable = [lv for lv in rows if lv.rms_error > 0 and math.isfinite(lv.rms_error)]
    zero = [lv.delta for lv in rows if lv.rms_error == 0]
    if zero:
        flags.append("zero_error_levels_excluded")
    if len(usable) < len(rows) - len(zero):
        flags.append("nonfinite_levels_excluded")
    order, r2 = fit_order([lv.delta for lv in usable], [lv.rms_error for lv in usable])
    if not math.isfinite(order):
        flags.append("order_undefined")
    return ConvergenceReport(
        levels=tuple(rows),
        estimated_order=order,
        regression_r2=r2,
        paths=paths,
        seed=seed,
        T=float(T),
        finest_n=finest_n,
        flags=tuple(flags),
    )


def _steps_for(delta: float, T: float) -> int:
    n = round(T / delta)
    if n < 1 or abs(n * delta - T) > 1e-9 * T:
        raise ValueError(f"step size {delta} does not divide the horizon T={T}")
    return n


def moment_study(
    scheme: ComposedScheme,
    p: float,
    deltas: Sequence[float],
    paths: int,
    seed: int,
    T: float = 1.0,
) -> MomentReport:
    """Terminal ``E|y_T|^p`` per step size, with Monte Carlo standard errors.

    All step sizes share one Brownian path per Monte Carlo sample, drawn at the
    smallest step and coarsened.
    """
    if p < 0:
        raise ValueError(f"moment order must be >= 0, got {p}")
    if paths < 2:
        raise ValueError(f"paths must be >= 2, got {paths}")
    for delta in deltas:
        scheme.check_delta(delta)
    steps = [_steps_for(delta, T) for delta in deltas]
    finest = max(steps)
    if any(finest % n for n in steps):
        raise ValueError("every step count must divide the largest one")
    fine = sample_paths(seed, paths, TimeGrid(T, finest))
    points = []
    for delta, n in zip(deltas, steps):
        inc = fine if n == finest else coarsen_increments(fine, finest // n)
        values = np.abs(simulate_ensemble(scheme, inc, store_paths=False)) ** p
        points.append(
            MomentPoint(
                delta=float(delta),
                moment=float(np.mean(values)),
                std_error=float(np.std(values, ddof=1) / math.sqrt(paths)),
            )
        )
    return MomentReport(
        p=float(p),
        per_delta=tuple(points),
        max_over_deltas=max(m.moment for m in points),
        paths=paths,
        seed=seed,
    )


def positivity_audit(ensemble: PathEnsemble, strict: bool = True) -> PositivityReport:
    """Count states ``<= 0`` (strict) or ``< 0``; non-finite states are counted apart."""
    states = ensemble.paths
    finite = np.isfinite(states)
    bad = (states <= 0) if strict else (states < 0)
    return PositivityReport(
        paths=ensemble.n_paths,
        steps=ensemble.grid.n,
        min_state=float(np.min(states[finite])) if finite.any() else math.nan,
        violations=int(np.count_nonzero(bad & finite)),
        nonfinite=int(np.count_nonzero(~finite)),
        strict=strict,
    )


def run_until_failure(step_fn, x0: float, increments: BrownianIncrements) -> PathEnsemble:
    """Simulate ``x -> step_fn(x, delta, dW)``; a path whose state leaves
    ``(0, inf)`` or turns non-finite stays frozen at that value."""
    grid = increments.grid
    dW = np.atleast_2d(increments.values)
    out = np.empty((dW.shape[0], grid.n + 1))
    out[:, 0] = x0
    state = out[:, 0].copy()
    for k in range(grid.n):
        alive = np.isfinite(state) & (state > 0)
        if alive.any():
            state[alive] = step_fn(state[alive], grid.delta, dW[alive, k])
        out[:, k + 1] = state
    return PathEnsemble(grid, out)


def baseline_contrast(
    params: AitSahaliaParams,
    delta: float,
    paths: int,
    seed: int,
    T: float = 1.0,
    cfg: SplitConfig = SplitConfig(),
) -> ContrastSummary:
    """Euler-Maruyama, drift-implicit Euler and the split scheme on shared paths.

    Counts are over states in ``x`` (the split scheme's ``sqrt(y)``).
    """
    if paths == 0:
        return ContrastSummary(rows=(), delta=float(delta), seed=seed)
    grid = TimeGrid(T, _steps_for(delta, T))
    inc = sample_paths(seed, paths, grid)

    sssd = simulate_ensemble(ait_sahalia_scheme(params, cfg), inc)
    ensembles = {
        "sssd": PathEnsemble(grid, np.sqrt(sssd.paths)),
        "euler-maruyama": run_until_failure(
            lambda x, dt, dw: euler_maruyama_step(x, params, dt, dw), params.x0, inc
        ),
        "drift-implicit": run_until_failure(
            lambda x, dt, dw: drift_implicit_step(x, params, dt, dw), params.x0, inc
        ),
    }
    rows = []
    for name, ens in ensembles.items():
        audit = positivity_audit(ens, strict=True)
        bad = ~(np.isfinite(ens.paths) & (ens.paths > 0))
        rows.append(
            ContrastRow(
                scheme=name,
                paths=paths,
                steps=grid.n,
                violations=audit.violations,
                nonfinite=audit.nonfinite,
                failed_paths=int(np.count_nonzero(bad.any(axis=1))),
                min_state=audit.min_state,
            )
        )
    return ContrastSummary(rows=tuple(rows), delta=float(delta), seed=seed)
