"""Closure of the Dirac valuations versus the consistent grid, for every small poset.

One row per (poset, bound): sizes of both sets, the number of closure
stages, and whether they agree.

    python scripts/closure_table.py --max-size 4 --bounds 1 2 3
"""
import argparse
import time

from powdom.poset import all_posets
from powdom.theory import closure_stages
from powdom.valuation import consistent_basis_enumerate, val_dirac, valuation_algebra


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--bounds", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()

    print(f"{'poset':<28} {'bound':>5} {'closure':>8} {'grid':>6} {'stages':>6}  agree")
    bad = 0
    t0 = time.perf_counter()
    for n in range(1, args.max_size + 1):
        for L in all_posets(n):
            for bound in args.bounds:
                A = valuation_algebra(L, bound, grid=True, carrier=())
                stages = closure_stages(A, [val_dirac(L, x) for x in L.elements])
                grid = set(consistent_basis_enumerate(L, bound))
                agree = stages[-1] == grid
                bad += not agree
                print(f"{L.name:<28} {bound:>5} {len(stages[-1]):>8} {len(grid):>6} {len(stages) - 1:>6}  {agree}")
    print(f"{bad} mismatches ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
