"""Sample error curves for one configuration and fit their decay rates.

Writes one CSV and one JSON per requested profile order when --out is given;
always prints the fitted slope next to the predicted exponent.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sigmadamp.experiments import (  # noqa: E402
    curve_csv,
    curve_json_dict,
    error_curve,
    fit_slope,
    gaussian_data,
    moment_free_data,
    tail_window,
)
from sigmadamp.cli import dumps17  # noqa: E402
from sigmadamp.fitting import geometric_grid  # noqa: E402
from sigmadamp.model import ModelParams, case_for  # noqa: E402

PRESETS = {
    "fractional": ModelParams(n=3, sigma=1.0, sigma1=0.25, sigma2=0.75),
    "frictional": ModelParams(n=1, sigma=1.0, sigma1=0.0, sigma2=0.8),
}


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", choices=sorted(PRESETS), default="fractional")
    ap.add_argument("--orders", default="0,1,2", help="comma separated profile orders")
    ap.add_argument("--data", choices=("gaussian", "moment_free"), default="gaussian")
    ap.add_argument("--t-min", type=float, default=10.0)
    ap.add_argument("--t-max", type=float, default=1e4)
    ap.add_argument("--per-decade", type=int, default=25)
    ap.add_argument("--quad-tol", type=float, default=1e-6)
    ap.add_argument("--out", type=Path, help="directory for CSV/JSON dumps")
    return ap.parse_args()


def main():
    args = parse_args()
    p = PRESETS[args.preset]
    case = case_for(p)
    data = gaussian_data() if args.data == "gaussian" else moment_free_data()
    t_grid = geometric_grid(args.t_min, args.t_max, args.per_decade)

    print(f"{args.preset}: n={p.n} sigma={p.sigma:g} sigma1={p.sigma1:g} sigma2={p.sigma2:g}")
    for k in (int(v) for v in args.orders.split(",")):
        curve = error_curve(p, case, k, data, t_grid=t_grid, quad_tol=args.quad_tol)
        fit = fit_slope(curve, tail_window(curve, 100.0, args.t_max))
        print(
            f"  k={k}: slope {fit.slope:+.6f}  target {fit.target:+.6f}  "
            f"gap {fit.gap:.6f}  max residual {fit.max_residual:.2e}"
        )
        if args.out:
            stem = f"curve_{case.value}_k{k}_{args.data}"
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{stem}.csv").write_text(curve_csv(curve, fit))
            (args.out / f"{stem}.json").write_text(dumps17(curve_json_dict(curve, fit)) + "\n")
            print(f"  wrote {stem}.csv / .json")


if __name__ == "__main__":
    main()
