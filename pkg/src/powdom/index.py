"""The consistent index power at basis level.

Elements are finite multisets ``[(r_1, x_1), ..., (r_n, x_n)]`` of positive
rational weights paired with elements of a finite poset ``L``; the empty
multiset is bottom.  Ideal inclusion of principal ideals is decided by an
injective matching.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .flow import injective_match
from .poset import FinitePoset, is_bounded, way_below
from .rational import INF, NONNEG, EXT_NONNEG, ParamSpace, ext_add, ext_leq, ext_mul, fmt, parse_rational
from .theory import QUASI_CONE, UNDEFINED, PartialAlgebra, apply_op


class IndexError_(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IndexElement:
    poset: FinitePoset = field(compare=False, hash=False, repr=False)
    pairs: tuple  # sorted (weight, element) pairs, all weights positive

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, IndexElement):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self):
        # cached: these values key the memo tables of the law checkers
        try:
            return self._hash
        except AttributeError:
            h = hash(self.pairs)
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self):
        if not self.pairs:
            return "⊥"
        return "[" + ", ".join(f"({fmt(r)},{x})" for r, x in self.pairs) + "]"

    @property
    def support(self) -> frozenset:
        return frozenset(x for _, x in self.pairs)

    @property
    def total(self) -> Fraction:
        return sum((r for r, _ in self.pairs), Fraction(0))

    def __len__(self):
        return len(self.pairs)


def index_element(L: FinitePoset, pairs: Iterable[tuple]) -> IndexElement:
    """Canonical form: weights exact, zero weights dropped, pairs sorted."""
    out = []
    for r, x in pairs:
        if r is INF:
            raise IndexError_("infinite weights are not basis elements")
        r = Fraction(r)
        if r < 0:
            raise IndexError_(f"negative weight {fmt(r)}")
        L.check(x)
        if r:
            out.append((r, x))
    out.sort(key=lambda p: (L.sort_key(p[1]), p[0]))
    return IndexElement(L, tuple(out))


def bottom(L: FinitePoset) -> IndexElement:
    return IndexElement(L, ())


def _same(a: IndexElement, b: IndexElement) -> FinitePoset:
    if a.poset is not b.poset and a.poset != b.poset:
        raise IndexError_("index elements live over different posets")
    return a.poset


def idx_match(a: IndexElement, b: IndexElement, strict: bool = False) -> dict | None:
    """An injection ``psi`` from the pairs of ``a`` to those of ``b`` dominating each pair.

    Non-strict: ``r_i <= s_psi(i)`` and ``x_i <= y_psi(i)``.  Strict:
    ``r_i < s_psi(i)`` and ``x_i << y_psi(i)``.  Returns a map of pair
    positions, or None.
    """
    L = _same(a, b)
    if strict:
        ok = lambda p, q: p[0] < q[0] and way_below(L, p[1], q[1])
    else:
        ok = lambda p, q: p[0] <= q[0] and L.leq(p[1], q[1])
    allowed = [(i, j) for i, p in enumerate(a.pairs) for j, q in enumerate(b.pairs) if ok(p, q)]
    return injective_match(range(len(a.pairs)), range(len(b.pairs)), allowed)


def idx_leq(a: IndexElement, b: IndexElement) -> bool:
    return idx_match(a, b) is not None


def idx_way_below(a: IndexElement, b: IndexElement) -> bool:
    """``a <<+ b``; bottom is way below everything, itself included."""
    _same(a, b)
    if not a.pairs:
        return True
    return idx_match(a, b, strict=True) is not None


def idx_add(a: IndexElement, b: IndexElement) -> IndexElement:
    L = _same(a, b)
    return index_element(L, a.pairs + b.pairs)


def idx_scale(r, a: IndexElement) -> IndexElement:
    if r is INF:
        raise IndexError_("the infinite scalar is not representable at basis level")
    r = Fraction(r)
    if r < 0:
        raise IndexError_(f"negative scalar {fmt(r)}")
    return index_element(a.poset, [(r * w, x) for w, x in a.pairs])


def idx_is_consistent(a: IndexElement, *more: IndexElement) -> bool:
    """Whether the joint support has a common upper bound."""
    for b in more:
        _same(a, b)
    support = set(a.support).union(*(b.support for b in more))
    return is_bounded(a.poset, support)


def idx_eta(L: FinitePoset, x) -> IndexElement:
    L.check(x)
    return IndexElement(L, ((Fraction(1), x),))


def idx_free_extend(f: dict | Callable, Q: PartialAlgebra, a: IndexElement, check: bool = True):
    """``sum_i r_i f(x_i)`` in the quasi-cone ``Q``, summed left to right."""
    fx = f if callable(f) else f.__getitem__
    L = a.poset
    if check:
        for x in L.elements:
            for y in L.up(x):
                if not Q.leq(fx(x), fx(y)):
                    raise IndexError_(f"map is not monotone: f({x}) not below f({y})")
    if not idx_is_consistent(a):
        raise IndexError_(f"inconsistent index element {a!r}")
    if not a.pairs:
        return Q.ops["zero"]()
    acc = None
    for r, x in a.pairs:
        term = Q.ops["scale"](r, fx(x))
        acc = term if acc is None else apply_op(Q, "plus", None, [acc, term])
        if acc is UNDEFINED:
            raise IndexError_("addition undefined in the target quasi-cone")
    return acc


def index_to_json(a: IndexElement) -> dict:
    return {"poset": a.poset.name, "pairs": [[fmt(r), x] for r, x in a.pairs]}


def index_from_json(data: dict, L: FinitePoset) -> IndexElement:
    if data.get("poset", L.name) != L.name:
        raise IndexError_(f"element is over poset {data['poset']!r}, not {L.name!r}")
    return index_element(L, [(parse_rational(r), x) for r, x in data.get("pairs", [])])


# -- targets and algebras ---------------------------------------------------------

def ext_rationals(denom: int = 2) -> PartialAlgebra:
    """Extended nonnegative rationals with + and multiplication (a total quasi-cone)."""
    carrier = NONNEG.grid(denom) + (INF,)
    return PartialAlgebra(
        name="ext-rationals",
        signature=QUASI_CONE,
        ops={"plus": ext_add, "zero": lambda: Fraction(0), "scale": ext_mul},
        leq=ext_leq,
        consistent=lambda args: True,
        params={"ext_nonneg": EXT_NONNEG},
        carrier=carrier,
        sampler=lambda rng, k: [rng.choice(carrier) for _ in range(k)],
        denom=denom,
        show=fmt,
    )


QuasiConeTarget = PartialAlgebra
EXT_RATIONALS = ext_rationals()


def random_index(rng: random.Random, L: FinitePoset, max_len: int = 3, denom: int = 3,
                 below=None, top: Fraction = Fraction(1)) -> IndexElement:
    """A random element; with ``below`` every support point is below that element."""
    pool = sorted(L.down(below), key=L.sort_key) if below is not None else list(L.elements)
    weights = [w for w in NONNEG.grid(denom) if 0 < w <= top]
    n = rng.randint(0, max_len)
    return index_element(L, [(rng.choice(weights), rng.choice(pool)) for _ in range(n)])


def index_algebra(L: FinitePoset, denom: int = 2, max_len: int = 3, carrier=None,
                  scalars: ParamSpace = NONNEG) -> PartialAlgebra:
    """The index power over ``L`` as a partial algebra of the quasi-cone theory.

    Addition is defined on pairs with jointly bounded support.  The
    ``ext_nonneg`` scalar space is realized without infinity.
    """

    def sampler(rng, k):
        # mostly jointly bounded tuples, so few law instances are skipped
        if rng.random() < 0.8:
            y = rng.choice(L.elements)
            return [random_index(rng, L, max_len, denom, below=y) for _ in range(k)]
        return [random_index(rng, L, max_len, denom) for _ in range(k)]

    return PartialAlgebra(
        name=f"index-{L.name}",
        signature=QUASI_CONE,
        ops={"plus": idx_add, "zero": lambda: bottom(L), "scale": idx_scale},
        leq=idx_leq,
        consistent=lambda args: idx_is_consistent(*args),
        params={"ext_nonneg": scalars},
        carrier=tuple(carrier) if carrier is not None else None,
        sampler=sampler,
        denom=denom,
        show=repr,
    )
