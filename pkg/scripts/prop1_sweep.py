"""Exhaustive (or sampled) sweep of the dihedral construction over even circulants.

    python scripts/prop1_sweep.py --orders 4:16 --out prop1.jsonl
"""
import argparse
import json
import sys

from cayleyrep.census import family_groups, run_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="4:12")
    ap.add_argument("--samples", type=int, help="random sets per group instead of exhaustive")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()
    lo, hi = map(int, args.orders.split(":"))
    sink = open(args.out, "w") if args.out else None
    summary = run_census(
        "prop1", family_groups("prop1", lo, hi), sink,
        sampling="random" if args.samples else "exhaustive",
        seed=args.seed, samples=args.samples or 0, jobs=args.jobs, max_order=hi,
    )
    print(json.dumps(summary.as_dict()))
    return 1 if summary.failures else 0


if __name__ == "__main__":
    sys.exit(main())
