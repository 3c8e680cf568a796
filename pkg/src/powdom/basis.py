"""Finite abstract bases ``(B, prec)`` and their round ideals."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Hashable, Iterable

from .poset import FinitePoset

ROUND_IDEAL_CAP = 8


class BasisError(ValueError):
    pass


@dataclass(frozen=True)
class AbstractBasis:
    carrier: tuple
    prec: frozenset  # pairs (x, y) meaning x prec y
    name: str = ""

    def below(self, x) -> frozenset:
        return frozenset(y for y in self.carrier if (y, x) in self.prec)

    def above(self, x) -> frozenset:
        return frozenset(y for y in self.carrier if (x, y) in self.prec)

    def check(self, x):
        if x not in self.carrier:
            raise BasisError(f"unknown element: {x!r}")


@dataclass(frozen=True)
class RoundIdeal:
    basis: AbstractBasis
    members: frozenset

    def __repr__(self):
        order = {x: i for i, x in enumerate(self.basis.carrier)}
        return "RoundIdeal{" + ", ".join(map(str, sorted(self.members, key=order.get))) + "}"


def validate_basis(carrier: Iterable[Hashable], prec_pairs: Iterable[tuple], name: str = "") -> AbstractBasis:
    """Check transitivity and finite interpolation over every subset of the carrier."""
    carrier = tuple(dict.fromkeys(carrier))
    prec = frozenset(tuple(p) for p in prec_pairs)
    for x, y in prec:
        for z in (x, y):
            if z not in carrier:
                raise BasisError(f"unknown element: {z!r}")
    for x, y in prec:
        for y2, z in prec:
            if y == y2 and (x, z) not in prec:
                raise BasisError(f"transitivity fails: {x} < {y} < {z} but not {x} < {z}")
    if len(carrier) > 16:
        raise BasisError("exhaustive interpolation check needs a small carrier")
    below = {z: {y for y in carrier if (y, z) in prec} for z in carrier}
    for k in range(len(carrier) + 1):
        for F in itertools.combinations(carrier, k):
            for z in carrier:
                if not all(f in below[z] for f in F):
                    continue
                if not any(all(f in below[y] for f in F) for y in below[z]):
                    raise BasisError(f"interpolation fails at F={{{', '.join(map(str, F))}}}, z={z}")
    return AbstractBasis(carrier, prec, name)


def principal_ideal(B: AbstractBasis, x) -> RoundIdeal:
    B.check(x)
    return RoundIdeal(B, B.below(x))


def is_round_ideal(B: AbstractBasis, members: Iterable) -> bool:
    R = frozenset(members)
    if not R:
        return False
    if any((x, y) in B.prec and x not in R for y in R for x in B.carrier):
        return False
    return all(any((x, z) in B.prec and (y, z) in B.prec for z in R) for x in R for y in R)


def round_ideals(B: AbstractBasis) -> list[RoundIdeal]:
    """Every round ideal, by exhaustive enumeration of subsets."""
    if len(B.carrier) > ROUND_IDEAL_CAP:
        raise BasisError(f"round-ideal enumeration capped at {ROUND_IDEAL_CAP} elements")
    out = []
    for k in range(1, len(B.carrier) + 1):
        for R in itertools.combinations(B.carrier, k):
            if is_round_ideal(B, R):
                out.append(RoundIdeal(B, frozenset(R)))
    return out


def rid_way_below(R1: RoundIdeal, R2: RoundIdeal) -> bool:
    if R1.basis != R2.basis:
        raise BasisError("round ideals come from different bases")
    B = R2.basis
    return any(R1.members <= B.below(x) for x in R2.members)


def ideal_poset(B: AbstractBasis) -> FinitePoset:
    """The round-ideal completion as a finite poset ordered by inclusion.

    Elements are the member frozensets of the ideals.
    """
    ideals = [R.members for R in round_ideals(B)]
    up = {R: frozenset(S for S in ideals if R <= S) for R in ideals}
    return FinitePoset(ideals, up, name=f"RId({B.name})" if B.name else "RId")


def basis_from_json(data: dict, name: str = "") -> AbstractBasis:
    if not isinstance(data, dict) or "carrier" not in data:
        raise BasisError("basis JSON needs a 'carrier' list")
    return validate_basis(data["carrier"], [tuple(p) for p in data.get("prec", [])],
                          name=data.get("name", name))


def basis_to_json(B: AbstractBasis) -> dict:
    order = {x: i for i, x in enumerate(B.carrier)}
    pairs = sorted(B.prec, key=lambda p: (order[p[0]], order[p[1]]))
    out = {"carrier": list(B.carrier), "prec": [list(p) for p in pairs]}
    if B.name:
        out["name"] = B.name
    return out


def basis_to_dot(B: AbstractBasis) -> str:
    q = lambda x: json.dumps(str(x))
    lines = [f"digraph {q(B.name or 'basis')} {{"]
    for x in B.carrier:
        lines.append(f"  {q(x)};")
    order = {x: i for i, x in enumerate(B.carrier)}
    for x, y in sorted(B.prec, key=lambda p: (order[p[0]], order[p[1]])):
        lines.append(f"  {q(x)} -> {q(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def transitive_relations(n: int) -> list[frozenset]:
    """Transitive relations on ``"0".."n-1"``, covering every isomorphism class.

    A transitive relation is a preorder with some of the points lying in
    singleton strongly-connected components made irreflexive; we enumerate
    block sizes over each unlabeled poset of blocks.  Some classes appear
    more than once.
    """
    from .poset import all_posets

    out: list[frozenset] = []
    seen: set = set()
    for k in range(1, n + 1):
        for Q in all_posets(k):
            blocks = list(Q.elements)
            for sizes in _compositions(n, k):
                labels = iter(str(i) for i in range(n))
                members = {b: [next(labels) for _ in range(sz)] for b, sz in zip(blocks, sizes)}
                pre = {(x, y) for b in blocks for c in Q.up(b) for x in members[b] for y in members[c]}
                singletons = [members[b][0] for b, sz in zip(blocks, sizes) if sz == 1]
                for drop in itertools.product((False, True), repeat=len(singletons)):
                    rel = frozenset(pre - {(x, x) for x, d in zip(singletons, drop) if d})
                    if rel not in seen:
                        seen.add(rel)
                        out.append(rel)
    return out


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest
