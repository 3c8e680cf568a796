"""Reproduce the two-point discrete example: Dirac valuations with no common bound.

Prints the consistent basis at a few bounds, the closure stages of
{delta_a, delta_b}, and optionally a DOT rendering of the closure ordered
pointwise.

    python scripts/figure1.py --denom 2 --dot
"""
import argparse

from powdom.poset import antichain, build_poset, to_dot
from powdom.theory import closure_stages
from powdom.valuation import consistent_basis_enumerate, val_dirac, val_is_consistent, val_leq_pointwise, valuation_algebra


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--denom", type=int, default=2)
    ap.add_argument("--dot", action="store_true", help="print the closure as a Hasse diagram")
    args = ap.parse_args()

    D = antichain(["a", "b"], name="discrete2")
    da, db = val_dirac(D, "a"), val_dirac(D, "b")
    for bound in range(1, args.denom + 1):
        basis = consistent_basis_enumerate(D, bound)
        print(f"consistent basis, bound {bound}: {len(basis)} elements: {sorted(map(repr, basis))}")
    print(f"delta_a, delta_b consistent: {val_is_consistent(da, db)}")

    A = valuation_algebra(D, args.denom, grid=True, carrier=())
    stages = closure_stages(A, [da, db])
    for i, st in enumerate(stages):
        print(f"stage {i}: {len(st)} elements: {sorted(map(repr, st))}")
    closed = stages[-1]
    mixed = [v for v in closed if len(v.support) > 1]
    print(f"mixed-support elements in the closure: {len(mixed)}")

    if args.dot:
        els = sorted(closed, key=repr)
        P = build_poset([repr(v) for v in els],
                        [(repr(u), repr(v)) for u in els for v in els if val_leq_pointwise(u, v)],
                        name="closure")
        print(to_dot(P))


if __name__ == "__main__":
    main()
