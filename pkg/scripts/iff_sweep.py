"""Run the randomized existence-theorem sweeps and print a summary.

    python scripts/iff_sweep.py --seed 7 --pairs-per-dim 1000 --dims 2 3 4 5 6
"""
import argparse
import time

from luequiv.experiments import (
    SweepConfig,
    filter_sweep,
    one_sided_iff_sweep,
    round_trip_sweep,
    two_sided_iff_sweep,
)


def main():
    defaults = SweepConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--pairs-per-dim", type=int, default=defaults.pairs_per_dim)
    parser.add_argument("--dims", type=int, nargs="+", default=list(defaults.dims))
    parser.add_argument("--tol", type=float, default=defaults.tol)
    args = parser.parse_args()
    cfg = SweepConfig(seed=args.seed, pairs_per_dim=args.pairs_per_dim, dims=tuple(args.dims), tol=args.tol)
    print(f"config: {cfg}")

    for name, fn in [("one-sided iff", one_sided_iff_sweep), ("two-sided iff", two_sided_iff_sweep),
                     ("round trip", round_trip_sweep), ("filter", filter_sweep)]:
        start = time.perf_counter()
        res = fn(cfg)
        took = time.perf_counter() - start
        print(f"{name:>14}: {res.violations} violations / {res.cases} checks, worst {res.worst:.2e}, {took:.1f}s")
        for line in res.failures:
            print(f"{'':>16}{line}")


if __name__ == "__main__":
    main()
