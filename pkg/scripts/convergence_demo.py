"""Strong-error study of the split scheme on the demo model at full scale.

    python scripts/convergence_demo.py [--paths 1000] [--finest-log2 14] [--levels 6] [--seed N]
"""

import argparse

from sssd.analysis import strong_error_study
from sssd.schemes import AitSahaliaParams, ait_sahalia_scheme

DEMO = AitSahaliaParams(a1=0.1, a2=0.2, a3=0.3, a4=0.4, sigma=0.3, r=3, rho=1.5, x0=1)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--paths", type=int, default=1000)
    parser.add_argument("--finest-log2", type=int, default=14)
    parser.add_argument("--levels", type=int, default=6)
    parser.add_argument("--seed", type=int, default=20261015)
    args = parser.parse_args()

    report = strong_error_study(
        ait_sahalia_scheme(DEMO), 2**args.finest_log2, args.levels, args.paths, args.seed
    )
    print(f"{'delta':>12} {'rms error':>12} {'mean abs':>12}")
    for lv in report.levels:
        print(f"{lv.delta:12.3e} {lv.rms_error:12.4e} {lv.mean_abs_error:12.4e}")
    print(f"estimated order {report.estimated_order:.4f}, r^2 {report.regression_r2:.4f}")


if __name__ == "__main__":
    main()
