"""Connection sets with no witness whose Cayley graph is still Cayley on an abelian group.

The sufficient condition is not claimed to be necessary; this records, per
gendih group, how often the brute-force oracle finds an abelian regular
subgroup anyway and lists the first few such sets.

    python scripts/witness_gap.py --orders 6:12 --show 3
"""
import argparse

from cayleyrep.census import family_groups, iter_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="6:12")
    ap.add_argument("--show", type=int, default=3)
    ap.add_argument("--max-aut", type=int, default=20000)
    args = ap.parse_args()
    lo, hi = map(int, args.orders.split(":"))
    for G in family_groups("thm2", lo, hi):
        no_w = gap = unchecked = 0
        examples = []
        for rec in iter_census("thm2", [G], oracle=True, max_aut=args.max_aut, max_order=hi):
            if rec.witness is not None:
                continue
            no_w += 1
            if not rec.oracle_checked:
                unchecked += 1
            elif rec.abelian_without_witness:
                gap += 1
                if len(examples) < args.show:
                    examples.append((rec.connection_set, rec.regular_classes))
        print(f"{G.label}: {no_w} sets without witness, {gap} still abelian-Cayley, {unchecked} over the Aut cap")
        for tokens, classes in examples:
            print(f"    S = {{{','.join(tokens)}}}  classes = {classes}")


if __name__ == "__main__":
    main()
