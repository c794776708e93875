"""Run the resolution loop over many master seeds and summarise the outcome distribution.

    python3 scripts/resolution_envelope.py --seeds 20 --out envelope.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from ifpconflict import NoProgress, SAParams, load_situation, middle_east, resolve


@dataclass
class EnvelopeConfig:
    kappa: float = 0.47
    k: int = 2
    S: int = 10
    sigma: float = 0.44
    seeds: int = 10
    seed_stride: int = 1000
    max_iterations: int = 50
    sa: SAParams = field(default_factory=SAParams)


def run(config: EnvelopeConfig, situation) -> list[dict]:
    rows = []
    for n in range(config.seeds):
        seed = n * config.seed_stride
        start = time.perf_counter()
        try:
            trace = resolve(situation, config.kappa, config.k, config.S, config.sigma, config.sa,
                            seed=seed, max_iterations=config.max_iterations)
            converged = True
        except NoProgress as exc:
            trace, converged = exc.trace, False
        first = trace.iterations[0] if trace.iterations else None
        rows.append({
            "seed": seed,
            "converged": converged,
            "iterations": len(trace.iterations),
            "targets": "-".join(r.target for r in trace.iterations),
            "first_L": first.objective if first else float("nan"),
            "final_cm": trace.final_cm,
            "seconds": time.perf_counter() - start,
        })
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("situation", nargs="?", help="situation file (default: bundled Middle East data)")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--kappa", type=float, default=0.47)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--S", type=int, default=10)
    p.add_argument("--sigma", type=float, default=0.44)
    p.add_argument("--steps", type=int, default=SAParams().steps_per_run)
    p.add_argument("--out", help="write per-seed rows as CSV")
    args = p.parse_args(argv)
    config = EnvelopeConfig(kappa=args.kappa, k=args.k, S=args.S, sigma=args.sigma, seeds=args.seeds,
                            sa=SAParams(steps_per_run=args.steps))
    situation = load_situation(args.situation) if args.situation else middle_east()
    rows = run(config, situation)

    for r in rows:
        print(f"seed {r['seed']:>6}: {r['iterations']} it, targets {r['targets'] or '-':<12} "
              f"first L {r['first_L']:.4f}, final CM {r['final_cm']:.4f}, {r['seconds']:.2f}s")
    final = np.array([r["final_cm"] for r in rows])
    within = sum(r["converged"] and r["iterations"] <= 5 for r in rows)
    print(f"\nconfig: {asdict(config)}")
    print(f"converged within 5 iterations: {within}/{len(rows)}; "
          f"final CM min {final.min():.4f}, median {np.median(final):.4f}, max {final.max():.4f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
