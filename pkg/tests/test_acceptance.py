"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL (...)`` line; the lines are
gathered again in the ``acceptance`` section of the pytest summary.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from oracles import rk4
from sssd.analysis import baseline_contrast, moment_study, positivity_audit, strong_error_study
from sssd.cli import main
from sssd.core import PathEnsemble, make_grid, sample_paths
from sssd.framework import StepSizeError, simulate_ensemble
from sssd.schemes import (
    AitSahaliaParams,
    CirQuadParams,
    GenAitSahaliaParams,
    SplitConfig,
    ait_sahalia_scheme,
    ait_sahalia_step,
    cir_quad_scheme,
    gen_ait_sahalia_scheme,
    gen_ait_sahalia_step,
    params_to_mapping,
    transformed_drift,
)

ROOT = Path(__file__).resolve().parents[1]
SEED = 20261015
DEMO = AitSahaliaParams(a1=0.1, a2=0.2, a3=0.3, a4=0.4, sigma=0.3, r=3, rho=1.5, x0=1)
GEN = GenAitSahaliaParams(**params_to_mapping(DEMO), b1=0.1, b2=0.1, b3=0.1)
CIR = CirQuadParams(k=1, l=1, d=0.5, sigma=0.4, x0=1)


def _positivity_run(scheme):
    start = time.perf_counter()
    ens = simulate_ensemble(scheme, sample_paths(SEED, 10_000, make_grid(1, 64)))
    elapsed = time.perf_counter() - start
    # audit the 6.4e5 stepped states; the shared initial state is left out
    stepped = PathEnsemble(make_grid(1, 63), ens.paths[:, 1:])
    return positivity_audit(stepped, strict=True), elapsed


def test_positivity(verdict):
    audit, elapsed = _positivity_run(ait_sahalia_scheme(DEMO, SplitConfig()))
    states = audit.paths * (audit.steps + 1)
    ok = states == 640_000 and audit.violations == 0 and audit.nonfinite == 0 and elapsed < 10
    assert verdict(1, ok, f"{audit.violations} of {states} states <= 0, min {audit.min_state:.3e}, {elapsed:.2f} s")


@pytest.mark.slow
def test_property_suite(verdict):
    modules = ["test_core.py", "test_framework.py", "test_schemes.py", "test_analysis.py", "test_cli.py"]
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *modules],
        cwd=Path(__file__).parent,
        capture_output=True,
        text=True,
    )
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    assert verdict(2, proc.returncode == 0, tail)


def test_diagonal_consistency(verdict):
    y = np.geomspace(1e-3, 1e3, 100)
    worst = {}
    for name, scheme in (
        ("ait-sahalia", ait_sahalia_scheme(DEMO)),
        ("gen-ait-sahalia", gen_ait_sahalia_scheme(GEN)),
        ("cir-quad", cir_quad_scheme(CIR)),
    ):
        target = scheme.target_drift(y)
        worst[name] = float(np.max(np.abs(scheme.split_drift(y, y) - target) / np.abs(target)))
    ok = max(worst.values()) <= 1e-12
    assert verdict(3, ok, ", ".join(f"{k} max rel {v:.1e}" for k, v in worst.items()))


@pytest.mark.slow
def test_strong_convergence(verdict):
    start = time.perf_counter()
    report = strong_error_study(ait_sahalia_scheme(DEMO), 2**14, 6, 1000, SEED)
    elapsed = time.perf_counter() - start
    rms = [lv.rms_error for lv in report.levels]
    decreasing = sum(b < a for a, b in zip(rms, rms[1:]))
    ok = decreasing >= 5 and report.estimated_order > 0.2 and report.regression_r2 > 0.9 and elapsed < 300
    assert verdict(
        4,
        ok,
        f"{decreasing}/5 decreasing pairs, order {report.estimated_order:.3f}, "
        f"r2 {report.regression_r2:.4f}, {elapsed:.1f} s",
    )


@pytest.mark.slow
def test_moment_bounds(verdict):
    scheme = ait_sahalia_scheme(DEMO)
    deltas = [2.0**-k for k in range(4, 9)]
    reports = [moment_study(scheme, p, deltas, 10_000, SEED) for p in (2, 4)]
    finite = all(math.isfinite(m.moment) for r in reports for m in r.per_delta)
    ratios = [r.spread_ratio for r in reports]
    try:
        moment_study(scheme, 2, [1.0], 10, SEED)
        rejected = ""
    except StepSizeError as exc:
        rejected = str(exc)
    ok = finite and max(ratios) <= 1.5 and "Δ < 1" in rejected
    assert verdict(5, ok, f"ratios p=2 {ratios[0]:.4f}, p=4 {ratios[1]:.4f}, Δ=1 rejected: {bool(rejected)}")


def test_baseline_contrast(verdict):
    params = AitSahaliaParams(**{**params_to_mapping(DEMO), "x0": 0.001})
    summary = baseline_contrast(params, 0.25, 1000, SEED)
    em, split = summary.row("euler-maruyama"), summary.row("sssd")
    ok = em.violations + em.nonfinite >= 1 and split.violations + split.nonfinite == 0
    pinned = em.violations == 3000 and em.failed_paths == 1000
    assert verdict(
        6,
        ok and pinned,
        f"euler-maruyama {em.violations} bad states on {em.failed_paths} paths, split scheme {split.violations}",
    )


def test_zero_noise_limit(verdict):
    params = AitSahaliaParams(**{**params_to_mapping(DEMO), "sigma": 0.0})
    grid = make_grid(1, 2**12)
    y = params.x0**2
    for _ in range(grid.n):
        y = ait_sahalia_step(y, params, SplitConfig(), grid.delta, 0.0)
    ref = rk4(lambda v: float(transformed_drift(v, params)), params.x0**2, 1.0, 1e-4)
    rel = abs(y - ref) / abs(ref)
    assert verdict(7, rel <= 1e-4, f"relative error {rel:.2e}")


def test_generalized_scheme(verdict):
    rng = np.random.default_rng(SEED)
    plain = GenAitSahaliaParams(**params_to_mapping(DEMO))
    cfg = SplitConfig(a=DEMO.a3)
    y = np.exp(rng.uniform(np.log(1e-4), np.log(1e4), 1000))
    delta = rng.uniform(1e-4, 0.5, 1000)
    dw = rng.standard_normal(1000) * np.sqrt(delta)
    mismatches = sum(
        gen_ait_sahalia_step(y[i], plain, delta[i], dw[i]) != ait_sahalia_step(y[i], DEMO, cfg, delta[i], dw[i])
        for i in range(1000)
    )
    audit, elapsed = _positivity_run(gen_ait_sahalia_scheme(GEN))
    ok = mismatches == 0 and audit.violations == 0 and audit.nonfinite == 0 and elapsed < 10
    assert verdict(8, ok, f"{mismatches} mismatches of 1000, {audit.violations} states <= 0 with b = 0.1")


def test_golden_report(verdict, tmp_path):
    code = main(["convergence", "--config", str(ROOT / "configs" / "demo.cfg"), "--out", str(tmp_path)])
    same = [
        (tmp_path / name).read_bytes() == (ROOT / "tests" / "golden" / name).read_bytes()
        for name in ("convergence.csv", "convergence.json")
    ]
    assert verdict(9, code == 0 and all(same), f"exit {code}, csv identical {same[0]}, json identical {same[1]}")
