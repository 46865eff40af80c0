"""Fit S against 1/eps for several kappa and compare with 3 kappa / (kappa + 2)."""

import argparse
from dataclasses import dataclass

from ctm_entropy import central_charge, fit_scaling
from ctm_entropy.scaling import entropy_sweep, geometric_grid


@dataclass(frozen=True)
class SweepConfig:
    kappas: tuple = (1, 2, 3, 4)
    eps_start: float = 0.2
    eps_stop: float = 0.02
    count: int = 8
    method: str = "auto"


def run(cfg: SweepConfig) -> list[dict]:
    grid = geometric_grid(cfg.eps_start, cfg.eps_stop, cfg.count)
    out = []
    for kappa in cfg.kappas:
        fit = fit_scaling(entropy_sweep(kappa, 0, grid, cfg.method))
        exact = central_charge(kappa)
        out.append(
            {"kappa": kappa, "c_exact": exact, "c_estimate": fit.c_estimate,
             "rel_error": abs(fit.c_estimate / exact - 1), "residual_max": fit.residual_max}
        )
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=int, action="append")
    ap.add_argument("--eps-start", type=float, default=SweepConfig.eps_start)
    ap.add_argument("--eps-stop", type=float, default=SweepConfig.eps_stop)
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--method", default=SweepConfig.method)
    args = ap.parse_args()
    cfg = SweepConfig(tuple(args.kappa or SweepConfig.kappas), args.eps_start, args.eps_stop, args.count, args.method)
    print(f"{'kappa':>5} {'c_exact':>10} {'c_estimate':>16} {'rel_error':>10} {'residual':>10}")
    for r in run(cfg):
        print(f"{r['kappa']:>5} {r['c_exact']:>10.6f} {r['c_estimate']:>16.12f} {r['rel_error']:>10.2e} {r['residual_max']:>10.2e}")


if __name__ == "__main__":
    main()
