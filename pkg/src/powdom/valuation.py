"""Simple valuations over finite posets and the consistent probabilistic power.

A simple valuation is a finite weight map with total mass at most one.
The order is decided by the Splitting Lemma (a transport plan supported on
comparable pairs) and cross-checked against evaluation on every upper set.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .flow import TransportPlan, feasible_transport
from .poset import FinitePoset, UpperSet, is_bounded, up_closure, upper_bounds, upper_sets, way_below
from .rational import UNIT, farey, fmt, parse_rational
from .theory import KEGELSPITZE, UNDEFINED, PartialAlgebra, apply_op


class ValuationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimpleValuation:
    poset: FinitePoset = field(compare=False, hash=False, repr=False)
    weights: tuple  # (element, positive weight) pairs in poset order

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SimpleValuation):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        # cached: these values key the memo tables of the law checkers
        try:
            return self._hash
        except AttributeError:
            h = hash(self.weights)
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self):
        if not self.weights:
            return "0"
        return " + ".join(f"{fmt(w)}δ{x}" for x, w in self.weights)

    def weight(self, x) -> Fraction:
        for y, w in self.weights:
            if y == x:
                return w
        return Fraction(0)

    def as_dict(self) -> dict:
        return dict(self.weights)

    @property
    def support(self) -> tuple:
        return tuple(x for x, _ in self.weights)

    @property
    def mass(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))


def valuation(L: FinitePoset, weights: dict | Iterable[tuple]) -> SimpleValuation:
    items = weights.items() if isinstance(weights, dict) else weights
    acc: dict = {}
    for x, w in items:
        L.check(x)
        w = Fraction(w)
        if w < 0:
            raise ValuationError(f"negative weight {fmt(w)} at {x}")
        acc[x] = acc.get(x, Fraction(0)) + w
    out = tuple(sorted(((x, w) for x, w in acc.items() if w), key=lambda p: L.sort_key(p[0])))
    mass = sum((w for _, w in out), Fraction(0))
    if mass > 1:
        raise ValuationError(f"mass {fmt(mass)} exceeds 1")
    return SimpleValuation(L, out)


def zero(L: FinitePoset) -> SimpleValuation:
    return SimpleValuation(L, ())


def val_dirac(L: FinitePoset, x) -> SimpleValuation:
    L.check(x)
    return SimpleValuation(L, ((x, Fraction(1)),))


def _same(mu: SimpleValuation, nu: SimpleValuation) -> FinitePoset:
    if mu.poset is not nu.poset and mu.poset != nu.poset:
        raise ValuationError("valuations live over different posets")
    return mu.poset


def val_evaluate(mu: SimpleValuation, U: Iterable) -> Fraction:
    if isinstance(U, UpperSet) and U.poset is not mu.poset and U.poset != mu.poset:
        raise ValuationError("upper set and valuation live over different posets")
    U = U if isinstance(U, (set, frozenset)) else frozenset(U)
    return sum((w for x, w in mu.weights if x in U), Fraction(0))


def val_profile(mu: SimpleValuation) -> tuple:
    """``mu(U)`` for every upper set ``U``, in the order of ``upper_sets``; cached."""
    try:
        return mu._profile
    except AttributeError:
        prof = tuple(val_evaluate(mu, U) for U in upper_sets(mu.poset))
        object.__setattr__(mu, "_profile", prof)
        return prof


def val_leq_pointwise(mu: SimpleValuation, nu: SimpleValuation) -> bool:
    _same(mu, nu)
    return all(a <= b for a, b in zip(val_profile(mu), val_profile(nu)))


def val_leq_split(mu: SimpleValuation, nu: SimpleValuation) -> TransportPlan | None:
    """A Splitting-Lemma plan witnessing ``mu <= nu``, or None when infeasible."""
    L = _same(mu, nu)
    rows, cols = mu.support, nu.support
    allowed = [(i, j) for i, x in enumerate(rows) for j, y in enumerate(cols) if L.leq(x, y)]
    return feasible_transport([w for _, w in mu.weights], [w for _, w in nu.weights], allowed,
                              rows=rows, cols=cols)


def val_leq(mu: SimpleValuation, nu: SimpleValuation) -> bool:
    return val_leq_split(mu, nu) is not None


def val_way_below(sigma: SimpleValuation, mu: SimpleValuation) -> bool:
    """Every nonempty part of ``sigma``'s support has strictly less mass than ``mu`` gives its up-set."""
    L = _same(sigma, mu)
    pairs = sigma.weights
    for k in range(1, len(pairs) + 1):
        for S in itertools.combinations(pairs, k):
            # on finite posets the way-below up-set of x is the up-set of x
            U = up_closure(L, [x for x, _ in S])
            if not sum((w for _, w in S), Fraction(0)) < val_evaluate(mu, U):
                return False
    return True


def val_scale(r, mu: SimpleValuation) -> SimpleValuation:
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValuationError(f"scalar {fmt(r)} outside [0, 1]")
    return SimpleValuation(mu.poset, tuple((x, r * w) for x, w in mu.weights if r * w))


def val_is_consistent(*vals: SimpleValuation) -> bool:
    """Whether the valuations have a common upper bound: their joint support is bounded."""
    L = vals[0].poset
    for v in vals[1:]:
        _same(vals[0], v)
    return is_bounded(L, {x for v in vals for x in v.support})


def val_is_consistent_brute(mu: SimpleValuation, nu: SimpleValuation) -> bool:
    """Oracle: some Dirac valuation bounds both."""
    L = _same(mu, nu)
    return any(val_leq_pointwise(mu, val_dirac(L, y)) and val_leq_pointwise(nu, val_dirac(L, y))
               for y in L.elements)


def _combine(L: FinitePoset, r: Fraction, mu: SimpleValuation, nu: SimpleValuation) -> SimpleValuation:
    acc: dict = {}
    for x, w in mu.weights:
        acc[x] = r * w
    for x, w in nu.weights:
        acc[x] = acc.get(x, Fraction(0)) + (1 - r) * w
    return SimpleValuation(L, tuple(sorted(((x, w) for x, w in acc.items() if w), key=lambda p: L.sort_key(p[0]))))


def val_plus_r(mu: SimpleValuation, nu: SimpleValuation, r) -> SimpleValuation:
    L = _same(mu, nu)
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValuationError(f"parameter {fmt(r)} outside [0, 1]")
    if not val_is_consistent(mu, nu):
        raise ValuationError(f"{mu!r} and {nu!r} have no common upper bound")
    return _combine(L, r, mu, nu)


def support_bound(mu: SimpleValuation):
    """The first upper bound of the support in poset order, or None."""
    L = mu.poset
    ub = upper_bounds(L, mu.support)
    return min(ub, key=L.sort_key) if ub else None


# -- linear sums and free extension ----------------------------------------------

def linear_sum(K: PartialAlgebra, items: Iterable[tuple], bound_witness=None):
    """Jones's finitely linear sum ``sum_i r_i x_i`` in the kegelspitze ``K``.

    With total weight one it is ``x_1 +_{r_1} (sum_{i>1} r_i/(1-r_1) x_i)``;
    below one it is the renormalized sum combined with zero at the mass.
    """
    items = [(Fraction(r), x) for r, x in items]
    if any(r < 0 for r, _ in items):
        raise ValuationError("negative weight in linear sum")
    items = [(r, x) for r, x in items if r]
    mass = sum((r for r, _ in items), Fraction(0))
    if mass > 1:
        raise ValuationError(f"linear sum of mass {fmt(mass)} exceeds 1")
    if bound_witness is not None:
        for _, x in items:
            if not K.leq(x, bound_witness):
                raise ValuationError(f"bound witness is not above {K.show(x)}")
    return _lsum(K, items)


def _plus(K, r, x, y):
    out = apply_op(K, "plus", r, [x, y])
    if out is UNDEFINED:
        raise ValuationError(f"+_{fmt(r)} undefined on {K.show(x)}, {K.show(y)}")
    return out


def _lsum(K: PartialAlgebra, items: list):
    if not items:
        return K.ops["zero"]()
    mass = sum((r for r, _ in items), Fraction(0))
    if mass < 1:
        inner = _lsum(K, [(r / mass, x) for r, x in items])
        return _plus(K, mass, inner, K.ops["zero"]())
    r1, x1 = items[0]
    if r1 == 1:
        return x1
    rest = _lsum(K, [(r / (1 - r1), x) for r, x in items[1:]])
    return _plus(K, r1, x1, rest)


def check_monotone_map(L: FinitePoset, f: Callable, leq: Callable) -> None:
    for x in L.elements:
        for y in L.up(x):
            if not leq(f(x), f(y)):
                raise ValuationError(f"map is not monotone: f({x}) not below f({y})")


def val_free_extend(f: dict | Callable, K: PartialAlgebra, mu: SimpleValuation, check: bool = True):
    """The free extension ``f^(sum r_i d_x_i) = sum r_i f(x_i)`` into ``K``."""
    fx = f if callable(f) else f.__getitem__
    L = mu.poset
    if check:
        check_monotone_map(L, fx, K.leq)
    if not mu.weights:
        return K.ops["zero"]()
    y = support_bound(mu)
    if y is None:
        raise ValuationError(f"support of {mu!r} is unbounded")
    return linear_sum(K, [(w, fx(x)) for x, w in mu.weights], fx(y))


def consistent_basis_enumerate(L: FinitePoset, bound: int) -> list[SimpleValuation]:
    """Bounded-support valuations whose weights are multiples of ``1/bound``, mass at most one."""
    if bound < 1:
        raise ValuationError("denominator bound must be at least 1")
    out = []
    els = L.elements
    for counts in _bounded_vectors(len(els), bound):
        weights = tuple((x, Fraction(c, bound)) for x, c in zip(els, counts) if c)
        if is_bounded(L, [x for x, _ in weights]):
            out.append(SimpleValuation(L, weights))
    return out


def _bounded_vectors(n: int, total: int):
    if n == 0:
        yield ()
        return
    for c in range(total + 1):
        for rest in _bounded_vectors(n - 1, total - c):
            yield (c,) + rest


def random_valuation(rng: random.Random, L: FinitePoset, denom: int = 4, below=None,
                     max_support: int | None = None) -> SimpleValuation:
    """A random grid valuation (weights multiples of ``1/denom``), optionally supported below ``below``."""
    pool = sorted(L.down(below), key=L.sort_key) if below is not None else list(L.elements)
    if max_support is not None and len(pool) > max_support:
        pool = rng.sample(pool, max_support)
    budget = rng.randint(0, denom)
    acc: dict = {}
    for _ in range(budget):
        x = rng.choice(pool)
        acc[x] = acc.get(x, 0) + 1
    return valuation(L, {x: Fraction(c, denom) for x, c in acc.items()})


# -- targets and algebras ---------------------------------------------------------

def unit_interval(denom: int = 4) -> PartialAlgebra:
    """Rationals in [0, 1] with ``x +_r y = r x + (1-r) y``: a total kegelspitze."""
    carrier = farey(denom)
    return PartialAlgebra(
        name="unit-interval",
        signature=KEGELSPITZE,
        ops={"plus": lambda r, x, y: r * x + (1 - r) * y,
             "zero": lambda: Fraction(0),
             "scale": lambda r, x: r * x},
        leq=lambda x, y: x <= y,
        consistent=lambda args: True,
        params={"unit": UNIT},
        carrier=carrier,
        sampler=lambda rng, k: [rng.choice(carrier) for _ in range(k)],
        denom=denom,
        show=fmt,
    )


KegelspitzeTarget = PartialAlgebra
UNIT_INTERVAL = unit_interval(4)


def valuation_algebra(L: FinitePoset, denom: int = 4, grid: bool = False, carrier=None) -> PartialAlgebra:
    """Simple valuations over ``L`` as a consistent kegelspitze.

    With ``grid=True`` results whose weights are not multiples of ``1/denom``
    are UNDEFINED, so closures stay on the grid; parameters always range
    over rationals in [0, 1] with denominator at most ``denom``.
    """

    def on_grid(mu):
        if grid and any((w * denom).denominator != 1 for _, w in mu.weights):
            return UNDEFINED
        return mu

    def plus(r, mu, nu):
        if not val_is_consistent(mu, nu):
            return UNDEFINED
        return on_grid(_combine(L, Fraction(r), mu, nu))

    def sampler(rng, k):
        if rng.random() < 0.8:
            y = rng.choice(L.elements)
            return [random_valuation(rng, L, denom, below=y) for _ in range(k)]
        return [random_valuation(rng, L, denom) for _ in range(k)]

    if carrier is None and grid:
        carrier = consistent_basis_enumerate(L, denom)
    return PartialAlgebra(
        name=f"valuations-{L.name}" + (f"-grid{denom}" if grid else ""),
        signature=KEGELSPITZE,
        ops={"plus": plus, "zero": lambda: zero(L), "scale": lambda r, mu: on_grid(val_scale(r, mu))},
        leq=val_leq,
        consistent=lambda args: val_is_consistent(*args),
        params={"unit": UNIT},
        carrier=tuple(carrier) if carrier is not None else None,
        sampler=sampler,
        denom=denom,
        show=repr,
    )


# -- interchange ------------------------------------------------------------------

def valuation_to_json(mu: SimpleValuation) -> dict:
    return {"poset": mu.poset.name, "weights": {str(x): fmt(w) for x, w in mu.weights}}


def valuation_from_json(data: dict, L: FinitePoset) -> SimpleValuation:
    if data.get("poset", L.name) != L.name:
        raise ValuationError(f"valuation is over poset {data['poset']!r}, not {L.name!r}")
    return valuation(L, {x: parse_rational(w) for x, w in data.get("weights", {}).items()})


def plan_to_json(plan: TransportPlan) -> dict:
    return plan.to_json()
