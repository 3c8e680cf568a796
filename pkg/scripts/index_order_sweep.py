"""Exhaustive comparison of the index order against injection search.

Enumerates every string of at most ``--max-len`` pairs with weights in the
nonzero Farey grid of order ``--denom`` over every poset of ``--size``
elements, and checks both the order and the way-below relation for all
ordered pairs of strings.  With the defaults (size 4, length 4, order 3)
this is roughly 3.75e8 pairs, hours of single-core time; use ``--limit``
or smaller parameters for a quick run.

    python scripts/index_order_sweep.py --size 3 --max-len 3
"""
import argparse
import itertools
import time

from powdom.index import idx_leq, idx_way_below, index_element
from powdom.poset import all_posets, way_below
from powdom.rational import farey


def brute(a, b, strict):
    L = a.poset
    if strict and not a.pairs:
        return True

    def ok(p, q):
        if strict:
            return p[0] < q[0] and way_below(L, p[1], q[1], brute_force=True)
        return p[0] <= q[0] and L.leq(p[1], q[1])

    return any(all(ok(p, b.pairs[j]) for p, j in zip(a.pairs, psi))
               for psi in itertools.permutations(range(len(b.pairs)), len(a.pairs)))


def strings(L, weights, max_len):
    """Every multiset of at most ``max_len`` (weight, point) pairs."""
    cells = [(w, x) for w in weights for x in L.elements]
    for k in range(max_len + 1):
        for combo in itertools.combinations_with_replacement(cells, k):
            yield index_element(L, combo)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--denom", type=int, default=3)
    ap.add_argument("--limit", type=int, default=0, help="stop after this many pairs (0: no limit)")
    args = ap.parse_args()

    weights = [w for w in farey(args.denom) if w > 0]
    pairs = mismatches = 0
    t0 = time.perf_counter()
    for L in all_posets(args.size):
        S = list(strings(L, weights, args.max_len))
        for a in S:
            for b in S:
                pairs += 1
                if idx_leq(a, b) != brute(a, b, False) or idx_way_below(a, b) != brute(a, b, True):
                    mismatches += 1
                    print(f"mismatch on {L.name}: {a!r} vs {b!r}")
                if args.limit and pairs >= args.limit:
                    break
            if args.limit and pairs >= args.limit:
                break
        print(f"{L.name}: {len(S)} strings, {pairs} pairs so far, {mismatches} mismatches "
              f"({time.perf_counter() - t0:.0f} s)", flush=True)
        if args.limit and pairs >= args.limit:
            break
    print(f"total {pairs} pairs, {mismatches} mismatches")


if __name__ == "__main__":
    main()
