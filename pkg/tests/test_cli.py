import json
import time
from pathlib import Path

import pytest

from sssd.cli import main
from sssd.config import ConfigError, from_mapping, parse_text
from sssd.schemes import AitSahaliaParams, SplitConfig, ait_sahalia_step

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"

PARAMS = """
a1 = 0.1
a2 = 0.2
a3 = 0.3
a4 = 0.4
sigma = 0.3
r = 3
rho = 1.5
x0 = 1
"""


def write_cfg(tmp_path, body, name="run.cfg"):
    path = tmp_path / name
    path.write_text(body)
    return str(path)


def run(tmp_path, command, body, *extra):
    out = tmp_path / "out"
    code = main([command, "--config", write_cfg(tmp_path, body), "--out", str(out), *extra])
    return code, out


class TestConfigGrammar:
    def test_comments_and_lists(self):
        entries = parse_text("# header\nmodel = ait-sahalia  # trailing\np = 2, 4\n\n")
        assert entries == {"model": "ait-sahalia", "p": "2, 4"}

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            parse_text("n = 1\nn = 2\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigError):
            parse_text("model ait-sahalia\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as err:
            from_mapping({**parse_text("model = ait-sahalia\n" + PARAMS), "colour": "red"})
        assert err.value.key == "colour"

    def test_unsupported_pair(self):
        body = "model = cir-quad\nscheme = euler-maruyama\nk = 1\nl = 1\nd = 0.5\nsigma = 0.4\nx0 = 1\n"
        with pytest.raises(ConfigError) as err:
            from_mapping(parse_text(body))
        assert err.value.key == "scheme"

    def test_overrides_win(self):
        cfg = from_mapping(parse_text("model = ait-sahalia\nseed = 3\n" + PARAMS), {"seed": 9, "out": None})
        assert cfg.seed == 9


def test_single_noise_free_step(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS.replace("sigma = 0.3", "sigma = 0") + "T = 0.5\nn = 1\npaths = 1\n"
    code, out = run(tmp_path, "simulate", body)
    assert code == 0
    header, row = (out / "terminal.csv").read_text().splitlines()
    assert header == "path_index,state,x"
    p = AitSahaliaParams(a1=0.1, a2=0.2, a3=0.3, a4=0.4, sigma=0, r=3, rho=1.5, x0=1)
    assert float(row.split(",")[1]) == ait_sahalia_step(1.0, p, SplitConfig(), 0.5, 0.0)


def test_missing_parameter(tmp_path, capsys):
    code, _ = run(tmp_path, "simulate", "model = ait-sahalia\n" + PARAMS.replace("a1 = 0.1\n", "") + "n = 4\n")
    assert code == 2
    assert "a1" in capsys.readouterr().err


def test_save_paths(tmp_path):
    body = "model = cir-quad\nk = 1\nl = 1\nd = 0.5\nsigma = 0.4\nx0 = 1\nn = 8\npaths = 3\nsave_paths = true\n"
    code, out = run(tmp_path, "simulate", body)
    assert code == 0
    lines = (out / "paths.csv").read_text().splitlines()
    assert len(lines) == 4 and lines[0].split(",")[-1] == "t8"


def test_outputs_deterministic(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS + "finest_n = 64\nlevels = 3\npaths = 16\nseed = 5\n"
    main(["convergence", "--config", write_cfg(tmp_path, body), "--out", str(tmp_path / "a")])
    main(["convergence", "--config", write_cfg(tmp_path, body), "--out", str(tmp_path / "b")])
    for name in ("convergence.csv", "convergence.json", "convergence.dat"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_seed_override_changes_output(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS + "finest_n = 64\nlevels = 2\npaths = 16\nseed = 5\n"
    main(["convergence", "--config", write_cfg(tmp_path, body), "--out", str(tmp_path / "a")])
    main(["convergence", "--config", write_cfg(tmp_path, body), "--out", str(tmp_path / "b"), "--seed", "6"])
    assert (tmp_path / "a" / "convergence.csv").read_text() != (tmp_path / "b" / "convergence.csv").read_text()


def test_single_level_has_no_order(tmp_path, capsys):
    body = "model = ait-sahalia\n" + PARAMS + "finest_n = 64\nlevels = 1\npaths = 16\n"
    code, out = run(tmp_path, "convergence", body)
    assert code == 1
    assert json.loads((out / "convergence.json").read_text())["estimated_order"] is None
    assert "order_undefined" in capsys.readouterr().out


def test_level_divisibility(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS + "finest_n = 100\nlevels = 3\npaths = 16\n"
    assert run(tmp_path, "convergence", body)[0] == 2


def test_smoke_is_fast(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS + "n = 64\npaths = 64\n"
    start = time.perf_counter()
    code, _ = run(tmp_path, "simulate", body)
    assert code == 0
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("scheme, expected", [("sssd", 0), ("euler-maruyama", 1), ("drift-implicit", 0)])
def test_positivity_exit_codes(tmp_path, scheme, expected):
    body = f"model = ait-sahalia\nscheme = {scheme}\n" + PARAMS.replace("x0 = 1", "x0 = 0.001")
    body += "n = 4\npaths = 1000\nseed = 20261015\n"
    code, out = run(tmp_path, "positivity", body)
    assert code == expected
    assert (out / "positivity.csv").exists()


def test_moments_reject_large_step(tmp_path, capsys):
    body = "model = ait-sahalia\n" + PARAMS + "T = 3\npaths = 10\np = 2\ndeltas = 1.5\n"
    code, _ = run(tmp_path, "moments", body)
    assert code == 2
    assert "Δ < 1" in capsys.readouterr().err


def test_moments_outputs(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS + "paths = 20\np = 2, 4\ndeltas = 0.25, 0.125\n"
    code, out = run(tmp_path, "moments", body)
    assert code == 0
    assert len((out / "moments.csv").read_text().splitlines()) == 5
    assert (out / "moments_p2.dat").exists() and (out / "moments_p4.dat").exists()


def test_contrast_command(tmp_path):
    body = "model = ait-sahalia\n" + PARAMS.replace("x0 = 1", "x0 = 0.001") + "n = 4\npaths = 100\n"
    code, out = run(tmp_path, "contrast", body, "--format", "json")
    assert code == 0
    rows = {r["scheme"]: r for r in json.loads((out / "contrast.json").read_text())["rows"]}
    assert rows["sssd"]["violations"] == 0 and rows["euler-maruyama"]["failed_paths"] > 0
    assert not (out / "contrast.csv").exists()


def test_contrast_other_model(tmp_path):
    body = "model = cir-quad\nk = 1\nl = 1\nd = 0.5\nsigma = 0.4\nx0 = 1\nn = 4\npaths = 10\n"
    assert run(tmp_path, "contrast", body)[0] == 2


def test_unreadable_config(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_golden_convergence(tmp_path):
    out = tmp_path / "demo"
    assert main(["convergence", "--config", str(ROOT / "configs" / "demo.cfg"), "--out", str(out)]) == 0
    for name in ("convergence.csv", "convergence.json"):
        assert (out / name).read_bytes() == (GOLDEN / name).read_bytes()
