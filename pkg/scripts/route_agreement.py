"""Pairwise gaps between the direct, Poisson and spectrum entropy routes."""

import argparse
from itertools import combinations

from ctm_entropy import ModelPoint, entropy
from ctm_entropy.entropy import SPECTRUM_MAX_X

ROUTES = ("direct", "poisson", "spectrum")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-kappa", type=int, default=4)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.2, 0.35, 0.5, 1.0, 2.0])
    args = ap.parse_args()
    worst = 0.0
    for kappa in range(1, args.max_kappa + 1):
        for i in range(kappa + 1):
            for eps in args.eps:
                p = ModelPoint.from_eps(kappa, i, eps)
                routes = [r for r in ROUTES if r != "spectrum" or p.x <= SPECTRUM_MAX_X]
                vals = {r: entropy(p, r).value for r in routes}
                gap = max(abs(vals[a] - vals[b]) for a, b in combinations(routes, 2))
                worst = max(worst, gap)
                print(f"kappa={kappa} i={i} eps={eps:<5} S={vals['direct']:.15f} gap={gap:.1e}")
    print(f"worst gap {worst:.2e}")


if __name__ == "__main__":
    main()
