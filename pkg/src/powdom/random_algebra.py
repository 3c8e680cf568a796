"""Random finite partial algebras and homomorphisms between them, for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from .poset import FinitePoset, build_poset
from .rational import UNIT
from .theory import PartialAlgebra, TheorySpec

# one bounded binary operation, a constant and a unit-indexed unary operation; no laws
SIGNATURE = TheorySpec(
    name="R",
    sigma0={"plus": 2, "zero": 0},
    sigma1={"scale": 2},
    theta={"scale": ("unit", "*")},
    bounds={"plus": "consistent"},
)


@dataclass(frozen=True)
class RandomAlgebraConfig:
    min_size: int = 2
    max_size: int = 6
    edge_prob: float = 0.35
    denom: int = 2
    local: float = 0.85  # chance an operation returns one of its own arguments


def _random_poset(rng: random.Random, n: int, p: float, name: str) -> FinitePoset:
    labels = [f"{name}{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_poset(labels, pairs, name=name)


def table_algebra(P: FinitePoset, plus: dict, zero, scale: dict, denom: int, name: str) -> PartialAlgebra:
    els = P.elements
    return PartialAlgebra(
        name=name,
        signature=SIGNATURE,
        ops={"plus": lambda x, y: plus[(x, y)], "zero": lambda: zero, "scale": lambda r, x: scale[(r, x)]},
        leq=P.leq,
        consistent=lambda args: bounded_within_poset(P, args),
        params={"unit": UNIT},
        carrier=els,
        denom=denom,
    )


def bounded_within_poset(P: FinitePoset, args) -> bool:
    ub = set(P.elements)
    for a in args:
        ub &= P.up(a)
    return bool(ub)


def random_algebra(rng: random.Random, cfg: RandomAlgebraConfig = RandomAlgebraConfig(), name: str = "A"):
    n = rng.randint(cfg.min_size, cfg.max_size)
    P = _random_poset(rng, n, cfg.edge_prob, name)
    els = P.elements
    grid = UNIT.grid(cfg.denom)
    pick = lambda args: rng.choice(args) if rng.random() < cfg.local else rng.choice(els)
    plus = {(x, y): pick((x, y)) for x in els for y in els}
    scale = {(r, x): pick((x,)) for r in grid for x in els}
    return table_algebra(P, plus, rng.choice(els), scale, cfg.denom, name)


def random_homomorphism(rng: random.Random, cfg: RandomAlgebraConfig = RandomAlgebraConfig()):
    """``(A, B, h)`` with ``h : A -> B`` a surjective homomorphism.

    ``B`` is random; ``A`` refines it: each element of ``B`` gets a fibre of
    one or two points, ordered lexicographically (the order of ``B`` first,
    then a chain inside each fibre), and every operation of ``A`` picks a
    point in the fibre of the corresponding result in ``B``.
    """
    B = random_algebra(rng, cfg, name="B")
    fibres = {b: [f"A{i}_{k}" for k in range(rng.randint(1, 2))] for i, b in enumerate(B.carrier)}
    h = {a: b for b, fib in fibres.items() for a in fib}
    els = [a for fib in fibres.values() for a in fib]
    pairs = []
    for a in els:
        for c in els:
            if a == c:
                continue
            ha, hc = h[a], h[c]
            if ha != hc and B.leq(ha, hc):
                pairs.append((a, c))
            elif ha == hc and fibres[ha].index(a) < fibres[ha].index(c):
                pairs.append((a, c))
    P = build_poset(els, pairs, name="A")
    grid = UNIT.grid(cfg.denom)
    bplus, bscale = B.ops["plus"], B.ops["scale"]
    plus = {(x, y): rng.choice(fibres[bplus(h[x], h[y])]) for x in els for y in els}
    scale = {(r, x): rng.choice(fibres[bscale(r, h[x])]) for r in grid for x in els}
    zero = rng.choice(fibres[B.ops["zero"]()])
    A = table_algebra(P, plus, zero, scale, cfg.denom, "A")
    return A, B, h


def random_subset(rng: random.Random, A: PartialAlgebra, max_size: int = 2) -> list:
    k = rng.randint(1, min(max_size, len(A.carrier)))
    return rng.sample(list(A.carrier), k)


__all__ = ["SIGNATURE", "RandomAlgebraConfig", "random_algebra", "random_homomorphism", "random_subset",
           "table_algebra"]
