"""Time grids, reproducible Brownian increments and path containers.

Gaussian draws use the inverse-CDF method: each path owns a PCG64 stream
seeded by ``numpy.random.SeedSequence(seed, spawn_key=(path_index,))``, the
top 53 bits of every raw 64-bit output become a uniform on the open interval
``(k + 0.5) / 2**53`` and ``scipy.special.ndtri`` maps it to a standard
normal.  Raw PCG64 output and SeedSequence mixing are both stable across
numpy releases, so fixed-seed streams stay bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

__all__ = [
    "TimeGrid",
    "BrownianIncrements",
    "PathEnsemble",
    "make_grid",
    "path_stream",
    "standard_normals",
    "sample_increments",
    "sample_paths",
    "coarsen_increments",
]

_U64 = 1 << 64
_TWO_M53 = 2.0**-53


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of ``[0, T]`` into ``n`` steps of size ``delta``."""

    T: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"horizon T must be > 0, got {self.T!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError(f"steps n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "n", int(self.n))

    @property
    def delta(self) -> float:
        return self.T / self.n

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.delta

    def coarsen(self, factor: int) -> "TimeGrid":
        if factor < 1 or self.n % factor:
            raise ValueError(f"{self.n} steps are not divisible by factor {factor}")
        return TimeGrid(self.T, self.n // factor)


def make_grid(T: float, n: int) -> TimeGrid:
    return TimeGrid(T, n)


@dataclass(frozen=True)
class BrownianIncrements:
    """Wiener increments on ``grid``.

    ``values`` has time on its last axis: shape ``(n,)`` for one path or
    ``(paths, n)`` for an ensemble whose rows are ordered by path index.
    ``values[..., k]`` is the increment over ``(t_k, t_{k+1}]``.
    """

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim not in (1, 2) or values.shape[-1] != self.grid.n:
            raise ValueError(
                f"increments must have {self.grid.n} entries on the last axis, "
                f"got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def paths(self) -> int:
        return 1 if self.values.ndim == 1 else self.values.shape[0]

    def totals(self) -> np.ndarray:
        """W(T) per path."""
        return self.values.sum(axis=-1)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def path_stream(seed: int, path_index: int) -> np.random.PCG64:
    """Independent bit generator for one Monte Carlo path."""
    if path_index < 0:
        raise ValueError(f"path_index must be >= 0, got {path_index}")
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=(int(path_index),))
    return np.random.PCG64(ss)


def standard_normals(stream: np.random.PCG64, size: int) -> np.ndarray:
    raw = stream.random_raw(size)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_M53
    return ndtri(u)


def sample_increments(seed: int, path_index: int, grid: TimeGrid) -> BrownianIncrements:
    """Brownian increments of one path; a pure function of its arguments."""
    z = standard_normals(path_stream(seed, path_index), grid.n)
    return BrownianIncrements(grid, z * np.sqrt(grid.delta))


def sample_paths(seed: int, paths: int, grid: TimeGrid, first_path: int = 0) -> BrownianIncrements:
    """Stack ``sample_increments`` for path indices ``first_path .. first_path+paths-1``."""
    if paths < 0:
        raise ValueError(f"paths must be >= 0, got {paths}")
    values = np.empty((paths, grid.n))
    for i in range(paths):
        values[i] = sample_increments(seed, first_path + i, grid).values
    return BrownianIncrements(grid, values)


def coarsen_increments(fine: BrownianIncrements, factor: int) -> BrownianIncrements:
    """Sum consecutive blocks of ``factor`` fine increments.

    Coarse increment ``k`` is the sum of fine increments
    ``factor*k .. factor*k + factor - 1`` on the same Brownian path.
    """
    if isinstance(factor, bool) or int(factor) != factor or factor < 2:
        raise ValueError(f"coarsening factor must be an integer >= 2, got {factor!r}")
    factor = int(factor)
    n = fine.grid.n
    if n % factor:
        raise ValueError(f"{n} fine increments are not divisible by factor {factor}")
    v = fine.values
    coarse = v.reshape(v.shape[:-1] + (n // factor, factor)).sum(axis=-1)
    return BrownianIncrements(fine.grid.coarsen(factor), coarse)


@dataclass(frozen=True)
class PathEnsemble:
    """Simulated states, one row per path, ``n + 1`` columns including the start."""

    grid: TimeGrid
    paths: np.ndarray = field(repr=False)

    def __post_init__(self):
        paths = np.array(self.paths, dtype=np.float64)
        if paths.ndim == 1:
            paths = paths[None, :]
        if paths.ndim != 2 or paths.shape[1] != self.grid.n + 1:
            raise ValueError(
                f"ensemble needs {self.grid.n + 1} columns, got shape {paths.shape}"
            )
        paths.setflags(write=False)
        object.__setattr__(self, "paths", paths)

    @property
    def n_paths(self) -> int:
        return self.paths.shape[0]

    @property
    def terminal(self) -> np.ndarray:
        return self.paths[:, -1]
