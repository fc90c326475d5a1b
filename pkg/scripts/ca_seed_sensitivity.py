"""How the lambda=0.5 vs lambda<=0.25 surplus ratio varies across master seeds,
run lengths and runs per rule.

    python3 scripts/ca_seed_sensitivity.py --seeds 0 1 2 --steps 1000 --seeds-per-rule 1
"""

import argparse
import statistics

from netsurplus.sources import ca_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=list(range(5)))
    ap.add_argument("--steps", type=int, nargs="+", default=[1000])
    ap.add_argument("--seeds-per-rule", type=int, nargs="+", default=[1])
    ap.add_argument("--cells", type=int, default=10)
    ap.add_argument("--samples", type=int, default=30)
    args = ap.parse_args()

    print("seed  steps  runs  mid_surplus  low_surplus  ratio  empty_mid_rules")
    for steps in args.steps:
        for spr in args.seeds_per_rule:
            for seed in args.seeds:
                rows = list(ca_sweep(args.cells, 1000, steps, spr, args.samples, seed))
                mid = [r for r in rows if r.lam == 0.5]
                low = [r for r in rows if r.lam <= 0.25]
                m = statistics.mean(r.surplus for r in mid)
                lo = statistics.mean(r.surplus for r in low)
                empty = sum(1 for r in mid if r.links == 0)
                print(f"{seed:4d}  {steps:5d}  {spr:4d}  {m:11.1f}  {lo:11.1f}  {m / lo:5.2f}  {empty:15d}")


if __name__ == "__main__":
    main()
