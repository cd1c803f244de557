"""Command-line driver.

    sssd {simulate,convergence,moments,positivity,contrast} --config FILE
         [--seed N] [--out DIR] [--format csv|json|both]

Exit codes: 0 success, 1 audit failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .config import ConfigError, ExperimentConfig, load_config
from .core import TimeGrid, sample_paths
from .framework import ComposedScheme, DomainError, StepSizeError, simulate_ensemble
from .schemes import (
    SolverError,
    ValidationError,
    ait_sahalia_scheme,
    cir_quad_scheme,
    drift_implicit_scheme,
    drift_implicit_step,
    euler_maruyama_scheme,
    euler_maruyama_step,
    gen_ait_sahalia_scheme,
)

EXIT_OK, EXIT_AUDIT, EXIT_CONFIG = 0, 1, 2


def build_scheme(cfg: ExperimentConfig) -> ComposedScheme:
    if cfg.model == "ait-sahalia":
        if cfg.scheme == "sssd":
            return ait_sahalia_scheme(cfg.params, cfg.split)
        if cfg.scheme == "euler-maruyama":
            return euler_maruyama_scheme(cfg.params)
        return drift_implicit_scheme(cfg.params)
    if cfg.model == "gen-ait-sahalia":
        return gen_ait_sahalia_scheme(cfg.params)
    return cir_quad_scheme(cfg.params)


def in_y(cfg: ExperimentConfig) -> bool:
    """Whether scheme states are ``y = x**2`` rather than ``x``."""
    return cfg.scheme == "sssd" and cfg.model != "cir-quad"


def strict_positivity(cfg: ExperimentConfig) -> bool:
    return cfg.model != "cir-quad" and cfg.params.a1 > 0


def simulate(cfg: ExperimentConfig, grid: TimeGrid):
    inc = sample_paths(cfg.seed, cfg.paths, grid)
    if cfg.scheme == "sssd":
        return simulate_ensemble(build_scheme(cfg), inc)
    step = euler_maruyama_step if cfg.scheme == "euler-maruyama" else drift_implicit_step
    return analysis.run_until_failure(
        lambda x, dt, dw: step(x, cfg.params, dt, dw), cfg.params.x0, inc
    )


class Writer:
    def __init__(self, out: str, fmt: str):
        self.dir = Path(out)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.fmt = fmt
        self.written = []

    def text(self, name: str, content: str) -> None:
        path = self.dir / name
        path.write_text(content)
        self.written.append(str(path))

    def report(self, stem: str, csv_text: str, json_text: str) -> None:
        if self.fmt in ("csv", "both"):
            self.text(f"{stem}.csv", csv_text)
        if self.fmt in ("json", "both"):
            self.text(f"{stem}.json", json_text)


def _dumps(obj) -> str:
    return json.dumps(analysis._jsonable(obj), indent=2, allow_nan=False) + "\n"


def cmd_simulate(cfg: ExperimentConfig, out: Writer) -> int:
    cfg.require("n")
    ens = simulate(cfg, TimeGrid(cfg.T, cfg.n))
    states = ens.paths
    x = np.sqrt(states) if in_y(cfg) else states
    rows = ["path_index,state,x\n"]
    rows += [f"{i},{s!r},{v!r}\n" for i, (s, v) in enumerate(zip(states[:, -1].tolist(), x[:, -1].tolist()))]
    out.text("terminal.csv", "".join(rows))
    if cfg.save_paths:
        header = "path_index," + ",".join(f"t{k}" for k in range(cfg.n + 1)) + "\n"
        body = "".join(
            f"{i}," + ",".join(repr(v) for v in row) + "\n" for i, row in enumerate(states.tolist())
        )
        out.text("paths.csv", header + body)
    audit = analysis.positivity_audit(ens, strict=strict_positivity(cfg))
    print(f"paths={audit.paths} steps={audit.steps} min_state={audit.min_state!r} "
          f"violations={audit.violations} nonfinite={audit.nonfinite}")
    return EXIT_OK


def cmd_convergence(cfg: ExperimentConfig, out: Writer) -> int:
    cfg.require("finest_n", "levels")
    report = analysis.strong_error_study(
        build_scheme(cfg), cfg.finest_n, cfg.levels, cfg.paths, cfg.seed, T=cfg.T
    )
    out.report("convergence", report.to_csv(), report.to_json())
    out.text("convergence.dat", report.plot_data())
    print(f"estimated_order={report.estimated_order!r} r2={report.regression_r2!r}"
          + (f" flags={','.join(report.flags)}" if report.flags else ""))
    return EXIT_OK if math.isfinite(report.estimated_order) else EXIT_AUDIT


def cmd_moments(cfg: ExperimentConfig, out: Writer) -> int:
    cfg.require("p", "deltas")
    scheme = build_scheme(cfg)
    reports = [analysis.moment_study(scheme, p, cfg.deltas, cfg.paths, cfg.seed, T=cfg.T) for p in cfg.p]
    csv_text = reports[0].to_csv() + "".join(r.to_csv().split("\n", 1)[1] for r in reports[1:])
    out.report("moments", csv_text, _dumps([r.to_dict() for r in reports]))
    finite = True
    for r in reports:
        out.text(f"moments_p{r.p:g}.dat", r.plot_data())
        finite &= all(math.isfinite(m.moment) for m in r.per_delta)
        print(f"p={r.p:g} max_over_deltas={r.max_over_deltas!r}")
    return EXIT_OK if finite else EXIT_AUDIT


def cmd_positivity(cfg: ExperimentConfig, out: Writer) -> int:
    cfg.require("n")
    audit = analysis.positivity_audit(simulate(cfg, TimeGrid(cfg.T, cfg.n)), strict=strict_positivity(cfg))
    out.report("positivity", audit.to_csv(), audit.to_json())
    print(f"violations={audit.violations} nonfinite={audit.nonfinite} min_state={audit.min_state!r}")
    return EXIT_OK if audit.violations == 0 and audit.nonfinite == 0 else EXIT_AUDIT


def cmd_contrast(cfg: ExperimentConfig, out: Writer) -> int:
    cfg.require("n")
    if cfg.model != "ait-sahalia":
        raise ConfigError("model", "contrast runs on the ait-sahalia model only")
    summary = analysis.baseline_contrast(
        cfg.params, cfg.T / cfg.n, cfg.paths, cfg.seed, T=cfg.T, cfg=cfg.split
    )
    out.report("contrast", summary.to_csv(), summary.to_json())
    for row in summary.rows:
        print(f"{row.scheme}: violations={row.violations} nonfinite={row.nonfinite} "
              f"failed_paths={row.failed_paths}")
    sssd_bad = any(r.violations or r.nonfinite for r in summary.rows if r.scheme == "sssd")
    return EXIT_AUDIT if sssd_bad else EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "convergence": cmd_convergence,
    "moments": cmd_moments,
    "positivity": cmd_positivity,
    "contrast": cmd_contrast,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sssd", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="flat key = value experiment file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="output directory (default: config 'out' or ./out)")
        p.add_argument("--format", choices=("csv", "json", "both"), help="report format")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, {"seed": args.seed, "out": args.out, "format": args.format})
        writer = Writer(cfg.out, cfg.format)
        return COMMANDS[args.command](cfg, writer)
    except (ConfigError, ValidationError, StepSizeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, DomainError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
