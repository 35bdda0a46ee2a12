"""Witness statistics per gendih group: how many connection sets admit the abelian construction.

    python scripts/thm2_sweep.py --orders 6:16
"""
import argparse
import sys
from collections import Counter

from cayleyrep.census import family_groups, iter_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="6:16")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    lo, hi = map(int, args.orders.split(":"))
    failures = 0
    print(f"{'group':<16}{'sets':>8}{'witness':>9}{'rate':>8}  witness-count histogram")
    for G in family_groups("thm2", lo, hi):
        hist = Counter()
        total = with_w = 0
        for rec in iter_census("thm2", [G], jobs=args.jobs, max_order=hi):
            total += 1
            hist[rec.witness_count] += 1
            with_w += rec.witness is not None
            failures += bool(rec.failure) or rec.certificate_ok is False
        hist_s = " ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        print(f"{G.label:<16}{total:>8}{with_w:>9}{with_w / total:>8.3f}  {hist_s}")
    print(f"failures: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
