"""Flat key-value experiment configuration.

Grammar, one entry per line::

    line    := blank | comment | entry
    comment := '#' any-text
    entry   := key '=' value [ '#' any-text ]
    key     := [A-Za-z_][A-Za-z0-9_]*
    value   := number | word | number (',' number)*

Keys are unique.  Model parameters use the keys listed in
``sssd.schemes.PARAM_KEYS``; the remaining accepted keys are listed in
``EXPERIMENT_KEYS``.  Anything else is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from .schemes import PARAM_KEYS, SplitConfig, ValidationError, params_from_mapping

__all__ = ["ConfigError", "ExperimentConfig", "parse_text", "load_config", "SUPPORTED"]

EXPERIMENT_KEYS = (
    "model", "scheme", "T", "n", "finest_n", "levels", "paths", "seed",
    "p", "deltas", "out", "format", "save_paths", "max_delta",
)

SUPPORTED = {
    "ait-sahalia": ("sssd", "euler-maruyama", "drift-implicit"),
    "gen-ait-sahalia": ("sssd",),
    "cir-quad": ("sssd",),
}

FORMATS = ("csv", "json", "both")

_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def parse_text(text: str) -> dict:
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not _KEY.match(key):
            raise ConfigError(f"line {lineno}", f"invalid key {key!r}")
        if key in entries:
            raise ConfigError(key, f"duplicate key on line {lineno}")
        if not value:
            raise ConfigError(key, "empty value")
        entries[key] = value
    return entries


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    scheme: str
    params: object
    split: Optional[SplitConfig]
    seed: int = 0
    T: float = 1.0
    n: Optional[int] = None
    finest_n: Optional[int] = None
    levels: Optional[int] = None
    paths: int = 1
    p: tuple = ()
    deltas: tuple = ()
    out: str = "out"
    format: str = "both"
    save_paths: bool = False

    def require(self, *names: str) -> None:
        for name in names:
            if getattr(self, name) in (None, ()):
                raise ConfigError(name, "missing required key for this command")


def _int(key, value, minimum=None) -> int:
    try:
        out = int(value)
    except ValueError:
        raise ConfigError(key, f"not an integer: {value!r}") from None
    if minimum is not None and out < minimum:
        raise ConfigError(key, f"must be >= {minimum}, got {out}")
    return out


def _float(key, value) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(key, f"not a number: {value!r}") from None


def _floats(key, value) -> tuple:
    return tuple(_float(key, v.strip()) for v in value.split(","))


def _bool(key, value) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigError(key, f"not a boolean: {value!r}")


def from_mapping(entries: Mapping[str, str], overrides: Mapping[str, object] = {}) -> ExperimentConfig:
    entries = dict(entries)
    for key in entries:
        if key not in EXPERIMENT_KEYS and key not in PARAM_KEYS:
            raise ConfigError(key, "unknown key")
    if "model" not in entries:
        raise ConfigError("model", "missing required key")
    model = entries["model"]
    if model not in SUPPORTED:
        raise ConfigError("model", f"unknown model {model!r}; expected one of {', '.join(SUPPORTED)}")
    scheme = entries.get("scheme", "sssd")
    if scheme not in SUPPORTED[model]:
        raise ConfigError("scheme", f"scheme {scheme!r} is not supported for model {model}")

    param_values = {k: v for k, v in entries.items() if k in PARAM_KEYS}
    try:
        params, split = params_from_mapping(model, param_values)
    except ValidationError as exc:
        raise ConfigError(exc.field, str(exc).split(": ", 1)[1]) from None
    if "max_delta" in entries:
        if split is None:
            raise ConfigError("max_delta", f"not used by model {model}")
        split = SplitConfig(a=split.a, max_delta=_float("max_delta", entries["max_delta"]))

    kwargs = {}
    if "T" in entries:
        kwargs["T"] = _float("T", entries["T"])
        if not kwargs["T"] > 0:
            raise ConfigError("T", "must be > 0")
    for key, minimum in (("n", 1), ("finest_n", 1), ("levels", 1), ("paths", 0), ("seed", 0)):
        if key in entries:
            kwargs[key] = _int(key, entries[key], minimum)
    if "p" in entries:
        kwargs["p"] = _floats("p", entries["p"])
    if "deltas" in entries:
        kwargs["deltas"] = _floats("deltas", entries["deltas"])
        if any(not d > 0 for d in kwargs["deltas"]):
            raise ConfigError("deltas", "step sizes must be > 0")
    if "out" in entries:
        kwargs["out"] = entries["out"]
    if "format" in entries:
        kwargs["format"] = entries["format"]
    if "save_paths" in entries:
        kwargs["save_paths"] = _bool("save_paths", entries["save_paths"])
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    if kwargs.get("format", "both") not in FORMATS:
        raise ConfigError("format", f"expected one of {', '.join(FORMATS)}")
    if not 0 <= kwargs.get("seed", 0) < 2**64:
        raise ConfigError("seed", "must be an unsigned 64-bit integer")
    return ExperimentConfig(model=model, scheme=scheme, params=params, split=split, **kwargs)


def load_config(path, overrides: Mapping[str, object] = {}) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    return from_mapping(parse_text(text), overrides)
