"""Threshold sensitivity to sigma and the resulting trisection sizes on the bundled data.

    python3 scripts/sigma_sweep.py --steps 9
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from ifpconflict import ThresholdPair, conflict_matrix, middle_east, trisect_agents, trisect_issues, trisect_pairs
from ifpconflict.report import sensitivity_series, sigma_grid


@dataclass
class SweepConfig:
    sigma_min: float = 0.05
    sigma_max: float = 0.45
    steps: int = 41


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sigma-min", type=float, default=SweepConfig.sigma_min)
    p.add_argument("--sigma-max", type=float, default=SweepConfig.sigma_max)
    p.add_argument("--steps", type=int, default=SweepConfig.steps)
    args = p.parse_args(argv)
    config = SweepConfig(args.sigma_min, args.sigma_max, args.steps)

    s = middle_east()
    grid = conflict_matrix(s)
    rows = sensitivity_series(s, sigma_grid(config.sigma_min, config.sigma_max, config.steps))
    print("sigma,alpha_lower,alpha_upper,pairs_s/w/n,agents_s/w/n,issues_s/w/n")
    for sigma, lower, upper in rows:
        thr = ThresholdPair(lower, upper)
        sizes = [trisect_pairs(grid, thr).cardinalities(), trisect_agents(s, None, thr).cardinalities(),
                 trisect_issues(s, None, thr).cardinalities()]
        print(f"{sigma:.3f},{lower:.4f},{upper:.4f}," + ",".join("/".join(map(str, c)) for c in sizes))
    return 0


if __name__ == "__main__":
    sys.exit(main())
