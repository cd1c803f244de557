"""Regenerate the golden convergence report used by the regression tests.

    python scripts/make_golden.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

from sssd.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"


def run() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        code = main(["convergence", "--config", str(ROOT / "configs" / "demo.cfg"), "--out", tmp])
        if code != 0:
            return code
        GOLDEN.mkdir(parents=True, exist_ok=True)
        for name in ("convergence.csv", "convergence.json"):
            shutil.copyfile(Path(tmp) / name, GOLDEN / name)
            print(f"wrote {GOLDEN / name}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
