"""Concrete split-step semi-discrete integrators and baselines.

The Ait-Sahalia model

    dx = 1/2 (a1/x - a2 + a3 x - a4 x^r) dt + sigma x^rho dW

is integrated through ``y = x**2``, which satisfies

    dy = (a1 - a2 sqrt(y) + a3 y - a4 y^((r+1)/2) + sigma^2 y^rho) dt
         + 2 sigma y^((rho+1)/2) dW.

The drift is split into ``a y - a2 sqrt(y)``, solved exactly, and a linear
part whose coefficients are frozen at the left-endpoint state, which makes
the remaining SDE geometric and therefore explicitly solvable.  Every
sub-flow maps ``[0, inf)`` into itself, so the scheme cannot leave the
positive half-line.

All step functions accept scalars or numpy arrays of states and noise.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Mapping

import numpy as np

from .framework import ComposedScheme, DomainError, StageFlow, StepSizeError

__all__ = [
    "LN_4_3",
    "ValidationError",
    "SolverError",
    "AitSahaliaParams",
    "GenAitSahaliaParams",
    "CirQuadParams",
    "SplitConfig",
    "validate",
    "transform_to_y",
    "to_x",
    "moment_bound_factor",
    "ait_sahalia_stage1",
    "ait_sahalia_stage1_absorbing",
    "STAGE1_BRANCHES",
    "ait_sahalia_stage2",
    "ait_sahalia_step",
    "ait_sahalia_log_step",
    "gen_stage1",
    "gen_stage2",
    "gen_stage3",
    "gen_ait_sahalia_step",
    "cir_quad_stage1",
    "cir_quad_stage2",
    "cir_quad_step",
    "ait_sahalia_drift_x",
    "euler_maruyama_step",
    "drift_implicit_step",
    "transformed_drift",
    "gen_transformed_drift",
    "cir_quad_drift",
    "ait_sahalia_scheme",
    "gen_ait_sahalia_scheme",
    "cir_quad_scheme",
    "euler_maruyama_scheme",
    "drift_implicit_scheme",
    "PARAM_KEYS",
    "params_from_mapping",
    "params_to_mapping",
]

LN_4_3 = math.log(4.0 / 3.0)


class ValidationError(ValueError):
    """A parameter bundle violates one of its invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class SolverError(RuntimeError):
    """The implicit baseline could not bracket a positive root."""


def _nonneg(obj, *names):
    for name in names:
        value = getattr(obj, name)
        if not math.isfinite(value):
            raise ValidationError(name, f"must be finite, got {value}")
        if value < 0:
            raise ValidationError(name, f"must satisfy {name} >= 0, got {value}")


@dataclass(frozen=True)
class AitSahaliaParams:
    a1: float
    a2: float
    a3: float
    a4: float
    sigma: float
    r: float
    rho: float
    x0: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        self.validate()

    def validate(self) -> "AitSahaliaParams":
        _nonneg(self, "a1", "a2", "a3", "a4", "sigma")
        if not self.r > 1:
            raise ValidationError("r", f"must satisfy r > 1, got {self.r}")
        if not self.rho > 1:
            raise ValidationError("rho", f"must satisfy rho > 1, got {self.rho}")
        if not self.r + 1 > 2 * self.rho:
            raise ValidationError(
                "r", f"must satisfy r + 1 > 2*rho, got {self.r + 1:g} <= {2 * self.rho:g}"
            )
        if not (math.isfinite(self.x0) and self.x0 > 0):
            raise ValidationError("x0", f"must satisfy x0 > 0, got {self.x0}")
        return self


@dataclass(frozen=True)
class GenAitSahaliaParams(AitSahaliaParams):
    """Ait-Sahalia coefficients plus the extra drift terms
    ``-b1 sqrt(x) - b2 x^(3/2) - b3 ln(1 + x^2)`` inside the halved bracket."""

    b1: float = 0.0
    b2: float = 0.0
    b3: float = 0.0

    def validate(self) -> "GenAitSahaliaParams":
        super().validate()
        _nonneg(self, "b1", "b2", "b3")
        return self


@dataclass(frozen=True)
class CirQuadParams:
    """``dx = (k (l - x) - d x^2) dt + sigma sqrt(x) dW``."""

    k: float
    l: float
    d: float
    sigma: float
    x0: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        self.validate()

    def validate(self) -> "CirQuadParams":
        _nonneg(self, "k", "l", "d", "sigma")
        if not (math.isfinite(self.x0) and self.x0 > 0):
            raise ValidationError("x0", f"must satisfy x0 > 0, got {self.x0}")
        if self.k * self.l < self.sigma**2 / 4:
            raise ValidationError(
                "sigma",
                f"must satisfy k*l >= sigma^2/4, got {self.k * self.l:g} < {self.sigma**2 / 4:g}",
            )
        return self


@dataclass(frozen=True)
class SplitConfig:
    """Free split parameter ``a`` and the step-size bound that goes with it.

    With the default ``a = ln(4/3)`` the p-th moment bound holds for every
    ``delta < 1``.  ``drop_linear_remainder=True`` discards the frozen linear
    term ``(a3 - a) y`` from the stochastic stage, reproducing the published
    closed form literally; that variant is only consistent with the model when
    ``a == a3``.  ``stage1_branch`` picks among the solutions of the
    ``a y - a2 sqrt(y)`` fragment (see ``STAGE1_BRANCHES``).
    """

    a: float = LN_4_3
    max_delta: float | None = 1.0
    drop_linear_remainder: bool = False
    stage1_branch: str = "squared"

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValidationError("a", f"must satisfy a > 0, got {self.a}")
        if self.max_delta is not None and not self.max_delta > 0:
            raise ValidationError("max_delta", f"must be > 0, got {self.max_delta}")
        if self.stage1_branch not in STAGE1_BRANCHES:
            raise ValidationError(
                "stage1_branch", f"unknown branch {self.stage1_branch!r}"
            )

    def linear_remainder(self, params: AitSahaliaParams) -> float:
        return 0.0 if self.drop_linear_remainder else params.a3 - self.a

    def check_delta(self, delta) -> None:
        if self.max_delta is not None and not delta < self.max_delta:
            raise StepSizeError(f"step size {delta} violates {self._delta_reason()}")

    def _delta_reason(self) -> str:
        if self.a == LN_4_3:
            return f"Δ < {self.max_delta:g} required by the moment bound for a = ln(4/3)"
        return f"Δ < {self.max_delta:g} configured for a = {self.a:g}"


def validate(params):
    """Return ``params`` unchanged if every invariant holds, else raise."""
    return params.validate()


def moment_bound_factor(a: float, delta: float, p: float) -> float:
    """``(3^p / 2) (e^(a delta) - 1)^p``; the p-th moment bound needs it below 1."""
    return 3.0**p / 2.0 * math.expm1(a * delta) ** p


def transform_to_y(x0):
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 <= 0):
        raise DomainError(f"x0 must be > 0, got {x0}")
    return (x0 * x0)[()]


def to_x(y):
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError(f"y must be >= 0, got {np.min(y)}")
    return np.sqrt(y)[()]


def _as_state(y, name="y_entry"):
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or np.any(np.isnan(y)):
        raise DomainError(f"{name} must be >= 0, got {np.nanmin(y) if y.size else y}")
    return y


# -- Ait-Sahalia stages ------------------------------------------------------


def ait_sahalia_stage1(y_entry, a, a2, delta):
    """Exact flow of ``y' = a y - a2 sqrt(y)`` over ``delta``:
    ``(a2/a + (sqrt(y) - a2/a) e^(a delta/2))^2``."""
    y = _as_state(y_entry)
    c = a2 / a
    u = c + (np.sqrt(y) - c) * np.exp(a * delta / 2)
    return (u * u)[()]


def ait_sahalia_stage1_absorbing(y_entry, a, a2, delta):
    """Solution of the same fragment that stops at 0 once ``sqrt(y)`` reaches it."""
    y = _as_state(y_entry)
    c = a2 / a
    u = np.maximum(c + (np.sqrt(y) - c) * np.exp(a * delta / 2), 0.0)
    return (u * u)[()]


STAGE1_BRANCHES = {
    "squared": ait_sahalia_stage1,
    "absorbing": ait_sahalia_stage1_absorbing,
}


def _stage2_exponent(y_frozen, params, delta, dW, linear):
    s2 = params.sigma * params.sigma
    yf = y_frozen
    rate = s2 * yf ** (params.rho - 1) + params.a4 * yf ** ((params.r - 1) / 2) - linear
    return -delta * rate + 2 * params.sigma * yf ** ((params.rho - 1) / 2) * dW


def ait_sahalia_stage2(y_entry, y_frozen, params: AitSahaliaParams, delta, dW, linear=0.0):
    """Semi-discrete stochastic stage.

    Adds ``a1 delta`` and then applies the exact solution of the geometric SDE
    ``dy = y (linear + sigma^2 yf^(rho-1) - a4 yf^((r-1)/2)) dt
    + 2 sigma yf^((rho-1)/2) y dW`` with ``yf = y_frozen``.
    """
    y = _as_state(y_entry)
    yf = np.asarray(y_frozen, dtype=float)
    if np.any(~(yf > 0)):
        raise DomainError(f"y_frozen must be > 0, got {np.min(yf)}")
    return ((params.a1 * delta + y) * np.exp(_stage2_exponent(yf, params, delta, dW, linear)))[()]


def ait_sahalia_step(y_n, params: AitSahaliaParams, cfg: SplitConfig, delta, dW):
    """One step of the transformed Ait-Sahalia scheme, ``y_n -> y_{n+1}``."""
    cfg.check_delta(delta)
    stage1 = STAGE1_BRANCHES[cfg.stage1_branch]
    y1 = stage1(y_n, cfg.a, params.a2, delta)
    return ait_sahalia_stage2(y1, y_n, params, delta, dW, cfg.linear_remainder(params))


def ait_sahalia_log_step(y_n, params: AitSahaliaParams, cfg: SplitConfig, delta, dW):
    """``log`` of ``ait_sahalia_step``, finite even where the step underflows."""
    cfg.check_delta(delta)
    y1 = STAGE1_BRANCHES[cfg.stage1_branch](y_n, cfg.a, params.a2, delta)
    yf = np.asarray(y_n, dtype=float)
    if np.any(~(yf > 0)):
        raise DomainError(f"y_n must be > 0, got {np.min(yf)}")
    with np.errstate(divide="ignore"):
        head = np.log(params.a1 * delta + y1)
    return (head + _stage2_exponent(yf, params, delta, dW, cfg.linear_remainder(params)))[()]


# -- generalized Ait-Sahalia stages ------------------------------------------


def gen_stage1(y_entry, y_frozen, b3, delta):
    """``y' = -b3 sqrt(y) ln(1 + yf)``; absorbed at 0."""
    y = _as_state(y_entry)
    if b3 == 0:
        return y[()]
    root = np.maximum(np.sqrt(y) - b3 * np.log1p(y_frozen) * delta / 2, 0.0)
    return (root * root)[()]


def gen_stage2(y_entry, y_frozen, b2, delta):
    """``y' = -b2 yf^(1/4) y``."""
    y = _as_state(y_entry)
    if b2 == 0:
        return y[()]
    return (y * np.exp(-b2 * np.asarray(y_frozen, dtype=float) ** 0.25 * delta))[()]


def gen_stage3(y_entry, b1, delta):
    """``y' = -b1 y^(3/4)``; absorbed at 0."""
    y = _as_state(y_entry)
    if b1 == 0:
        return y[()]
    root = np.maximum(y**0.25 - b1 * delta / 4, 0.0)
    return (root * root * root * root)[()]


def _require_a3(params):
    if not params.a3 > 0:
        raise ValidationError("a3", "must be > 0 for the generalized scheme (it replaces a)")


def gen_ait_sahalia_step(y_n, params: GenAitSahaliaParams, delta, dW):
    """Five-stage step for the generalized model; ``a3`` plays the split parameter."""
    _require_a3(params)
    y = gen_stage1(y_n, y_n, params.b3, delta)
    y = gen_stage2(y, y_n, params.b2, delta)
    y = gen_stage3(y, params.b1, delta)
    y = ait_sahalia_stage1(y, params.a3, params.a2, delta)
    return ait_sahalia_stage2(y, y_n, params, delta, dW)


# -- CIR with quadratic drift ------------------------------------------------


def cir_quad_stage1(y_entry, y_frozen, k, d, delta):
    """``y' = -k y - d y yf``."""
    y = _as_state(y_entry)
    return (y * np.exp(-(k + d * np.asarray(y_frozen, dtype=float)) * delta))[()]


def cir_quad_stage2(y_entry, params: CirQuadParams, delta, dW):
    """Square-root semi-discrete step for ``dy = k l dt + sigma sqrt(y) dW``."""
    y = _as_state(y_entry)
    radicand = np.maximum(y + (params.k * params.l - params.sigma**2 / 4) * delta, 0.0)
    root = np.sqrt(radicand) + params.sigma / 2 * dW
    return (root * root)[()]


def cir_quad_step(y_n, params: CirQuadParams, delta, dW):
    yn = np.asarray(y_n, dtype=float)
    if np.any(~(yn > 0)):
        raise DomainError(f"y_n must be > 0, got {np.min(yn)}")
    y1 = cir_quad_stage1(yn, yn, params.k, params.d, delta)
    return cir_quad_stage2(y1, params, delta, dW)


# -- baselines in the original variable --------------------------------------


def ait_sahalia_drift_x(x, params: AitSahaliaParams, drift_factor=0.5):
    p = params
    return drift_factor * (p.a1 / x - p.a2 + p.a3 * x - p.a4 * x**p.r)


def euler_maruyama_step(x_n, params: AitSahaliaParams, delta, dW, drift_factor=0.5):
    """Explicit Euler-Maruyama for ``x``; may leave ``(0, inf)``.

    ``drift_factor`` scales the drift bracket: 0.5 for the canonical model,
    1.0 for the variant without the halving.
    """
    x = np.asarray(x_n, dtype=float)
    if np.any(x == 0):
        raise DomainError("Euler-Maruyama is undefined at x = 0 (a1/x drift term)")
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        drift = ait_sahalia_drift_x(x, params, drift_factor)
        out = x + drift * delta + params.sigma * x**params.rho * dW
    return out[()]


def drift_implicit_step(
    x_n, params: AitSahaliaParams, delta, dW, drift_factor=0.5, max_iter=200
):
    """Drift-implicit Euler: the positive root ``z`` of
    ``z = x_n + drift(z) delta + sigma x_n^rho dW``.

    The root is bracketed (the upper end doubling up to ``2**60``) and then
    refined by Newton steps that fall back to bisection whenever they leave
    the bracket.
    """
    p = params
    x = np.asarray(x_n, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"x_n must be > 0, got {np.min(x)}")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    c = drift_factor * delta
    rhs = x - c * p.a2 + p.sigma * x**p.rho * np.broadcast_to(dW, x.shape)

    def g(z):
        return z - c * (p.a1 / z + p.a3 * z - p.a4 * z**p.r) - rhs

    def dg(z):
        return 1.0 - c * (-p.a1 / (z * z) + p.a3 - p.a4 * p.r * z ** (p.r - 1))

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        lo = np.minimum(x, 1.0)
        glo = g(lo)
        for _ in range(120):
            need = glo >= 0
            if not need.any():
                break
            lo = np.where(need, lo * 2.0**-8, lo)
            glo = np.where(need, g(lo), glo)
        hi = np.maximum(x, 1.0)
        ghi = g(hi)
        while True:
            need = ghi <= 0
            if not need.any():
                break
            if np.any(hi[need] >= 2.0**60):
                raise SolverError("no sign change found on (0, 2**60]")
            hi = np.where(need, hi * 2.0, hi)
            ghi = np.where(need, g(hi), ghi)
        if np.any(glo >= 0):
            raise SolverError("no sign change found near 0: no positive root")

        z = 0.5 * (lo + hi)
        for _ in range(max_iter):
            gz = g(z)
            done = np.abs(gz) <= 1e-14 * (1.0 + np.abs(z))
            if done.all():
                break
            lo = np.where(gz < 0, z, lo)
            hi = np.where(gz > 0, z, hi)
            newton = z - gz / dg(z)
            ok = (newton > lo) & (newton < hi) & np.isfinite(newton)
            nxt = np.where(ok, newton, 0.5 * (lo + hi))
            stalled = (nxt == z) | (hi - lo <= np.spacing(z))
            z = np.where(done | stalled, z, nxt)
            if np.all(done | stalled):
                break
    return z[0] if scalar else z


# -- exact drifts of the transformed equations -------------------------------


def transformed_drift(y, params: AitSahaliaParams):
    p = params
    return p.a1 - p.a2 * np.sqrt(y) + p.a3 * y - p.a4 * y ** ((p.r + 1) / 2) + p.sigma**2 * y**p.rho


def gen_transformed_drift(y, params: GenAitSahaliaParams):
    p = params
    return (
        transformed_drift(y, p)
        - p.b1 * y**0.75
        - p.b2 * y**1.25
        - p.b3 * np.sqrt(y) * np.log1p(y)
    )


def cir_quad_drift(y, params: CirQuadParams):
    return params.k * (params.l - y) - params.d * y * y


def _stage2_drift(params, linear):
    p = params

    def drift(y, yf):
        return p.a1 + y * (linear + p.sigma**2 * yf ** (p.rho - 1) - p.a4 * yf ** ((p.r - 1) / 2))

    return drift


# -- composed schemes --------------------------------------------------------


def ait_sahalia_scheme(params: AitSahaliaParams, cfg: SplitConfig = SplitConfig()) -> ComposedScheme:
    """The transformed Ait-Sahalia scheme; states are ``y = x**2``."""
    p = params
    a = cfg.a
    stage1 = STAGE1_BRANCHES[cfg.stage1_branch]
    linear = cfg.linear_remainder(p)
    return ComposedScheme(
        stages=(
            StageFlow(
                f"ait-sahalia/stage1[{cfg.stage1_branch}]",
                lambda y, yf, dt, dW: stage1(y, a, p.a2, dt),
                drift=lambda y, yf: a * y - p.a2 * np.sqrt(y),
            ),
            StageFlow(
                "ait-sahalia/stage2",
                lambda y, yf, dt, dW: ait_sahalia_stage2(y, yf, p, dt, dW, linear),
                kind="stochastic",
                drift=_stage2_drift(p, linear),
            ),
        ),
        initial_state=transform_to_y(p.x0),
        lower_bound=0.0,
        max_delta=cfg.max_delta,
        max_delta_reason=cfg._delta_reason() if cfg.max_delta is not None else "",
        name="sssd",
        target_drift=lambda y: transformed_drift(y, p),
    )


def gen_ait_sahalia_scheme(params: GenAitSahaliaParams) -> ComposedScheme:
    p = params
    _require_a3(p)
    return ComposedScheme(
        stages=(
            StageFlow(
                "gen/stage1",
                lambda y, yf, dt, dW: gen_stage1(y, yf, p.b3, dt),
                drift=lambda y, yf: -p.b3 * np.sqrt(y) * np.log1p(yf),
            ),
            StageFlow(
                "gen/stage2",
                lambda y, yf, dt, dW: gen_stage2(y, yf, p.b2, dt),
                drift=lambda y, yf: -p.b2 * y * yf**0.25,
            ),
            StageFlow(
                "gen/stage3",
                lambda y, yf, dt, dW: gen_stage3(y, p.b1, dt),
                drift=lambda y, yf: -p.b1 * y**0.75,
            ),
            StageFlow(
                "gen/stage4",
                lambda y, yf, dt, dW: ait_sahalia_stage1(y, p.a3, p.a2, dt),
                drift=lambda y, yf: p.a3 * y - p.a2 * np.sqrt(y),
            ),
            StageFlow(
                "gen/stage5",
                lambda y, yf, dt, dW: ait_sahalia_stage2(y, yf, p, dt, dW),
                kind="stochastic",
                drift=_stage2_drift(p, 0.0),
            ),
        ),
        initial_state=transform_to_y(p.x0),
        lower_bound=0.0,
        name="sssd",
        target_drift=lambda y: gen_transformed_drift(y, p),
    )


def cir_quad_scheme(params: CirQuadParams) -> ComposedScheme:
    p = params
    return ComposedScheme(
        stages=(
            StageFlow(
                "cir-quad/stage1",
                lambda y, yf, dt, dW: cir_quad_stage1(y, yf, p.k, p.d, dt),
                drift=lambda y, yf: -p.k * y - p.d * y * yf,
            ),
            StageFlow(
                "cir-quad/stage2",
                lambda y, yf, dt, dW: cir_quad_stage2(y, p, dt, dW),
                kind="stochastic",
                # Ito drift of (sqrt(y + (kl - s^2/4) dt) + s/2 dW)^2
                drift=lambda y, yf: p.k * p.l + 0.0 * y,
            ),
        ),
        initial_state=p.x0,
        lower_bound=0.0,
        name="sssd",
        target_drift=lambda y: cir_quad_drift(y, p),
    )


def euler_maruyama_scheme(params: AitSahaliaParams, drift_factor=0.5) -> ComposedScheme:
    """Baseline in ``x``; unconstrained so violations can be observed."""
    p = params
    return ComposedScheme(
        stages=(
            StageFlow(
                "euler-maruyama",
                lambda x, xf, dt, dW: euler_maruyama_step(x, p, dt, dW, drift_factor),
                kind="stochastic",
            ),
        ),
        initial_state=p.x0,
        lower_bound=-math.inf,
        name="euler-maruyama",
    )


def drift_implicit_scheme(params: AitSahaliaParams, drift_factor=0.5) -> ComposedScheme:
    p = params
    return ComposedScheme(
        stages=(
            StageFlow(
                "drift-implicit",
                lambda x, xf, dt, dW: drift_implicit_step(x, p, dt, dW, drift_factor),
                kind="stochastic",
            ),
        ),
        initial_state=p.x0,
        lower_bound=0.0,
        name="drift-implicit",
    )


# -- flat key-value serialization --------------------------------------------

PARAM_KEYS = ("a1", "a2", "a3", "a4", "sigma", "r", "rho", "x0", "a", "b1", "b2", "b3", "k", "l", "d")

_MODEL_KEYS = {
    "ait-sahalia": ("a1", "a2", "a3", "a4", "sigma", "r", "rho", "x0"),
    "gen-ait-sahalia": ("a1", "a2", "a3", "a4", "sigma", "r", "rho", "x0", "b1", "b2", "b3"),
    "cir-quad": ("k", "l", "d", "sigma", "x0"),
}
_MODEL_TYPES = {
    "ait-sahalia": AitSahaliaParams,
    "gen-ait-sahalia": GenAitSahaliaParams,
    "cir-quad": CirQuadParams,
}


def params_from_mapping(model: str, values: Mapping[str, object]):
    """Build ``(params, split_config)`` from flat keys.

    ``split_config`` is ``None`` unless the model is ``ait-sahalia``; the
    optional key ``a`` is only accepted there.
    """
    if model not in _MODEL_KEYS:
        raise ValidationError("model", f"unknown model {model!r}")
    required = _MODEL_KEYS[model]
    allowed = set(required) | ({"a"} if model == "ait-sahalia" else set())
    for key in values:
        if key not in PARAM_KEYS:
            raise ValidationError(key, "unknown parameter key")
        if key not in allowed:
            raise ValidationError(key, f"not a parameter of model {model}")
    parsed = {}
    for key in required:
        if key not in values:
            raise ValidationError(key, "missing required parameter")
        parsed[key] = _to_float(key, values[key])
    params = _MODEL_TYPES[model](**parsed)
    cfg = None
    if model == "ait-sahalia":
        cfg = SplitConfig(a=_to_float("a", values["a"])) if "a" in values else SplitConfig()
    return params, cfg


def params_to_mapping(params, cfg: SplitConfig | None = None) -> dict:
    out = asdict(params)
    if cfg is not None:
        out["a"] = cfg.a
    return out


def _to_float(key, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(key, f"not a number: {value!r}") from None
