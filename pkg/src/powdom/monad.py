"""Kleisli triples at basis level for both power constructions, plus strength.

Spaces of basis elements over a finite poset ``L`` are materialized on a
rational grid and ordered by the construction's order, giving finite posets
that ``P(P(L))`` can be built over.  The multiplication is ``mu = id^dagger``.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .index import (IndexElement, IndexError_, bottom, idx_eta, idx_is_consistent, idx_leq, index_element)
from .poset import FinitePoset, is_bounded, product
from .rational import farey
from .theory import CheckResult, Report
from .valuation import SimpleValuation, ValuationError, consistent_basis_enumerate, val_dirac, val_leq, zero


class MonadError(ValueError):
    pass


# -- binds and strengths ----------------------------------------------------------

def _fn(f):
    return f if callable(f) else f.__getitem__


def bind_valuation(f, mu: SimpleValuation, M: FinitePoset) -> SimpleValuation:
    """``f^dagger(mu) = sum_i r_i f(x_i)``, computed pointwise over ``M``."""
    f = _fn(f)
    L = mu.poset
    if not is_bounded(L, mu.support):
        raise ValuationError(f"support of {mu!r} is unbounded")
    acc: dict = {}
    for x, r in mu.weights:
        v = f(x)
        if v.poset is not M and v.poset != M:
            raise ValuationError(f"f({x}) is not a valuation over {M.name}")
        for y, w in v.weights:
            acc[y] = acc.get(y, Fraction(0)) + r * w
    weights = tuple(sorted(((y, w) for y, w in acc.items() if w), key=lambda p: M.sort_key(p[0])))
    if not is_bounded(M, [y for y, _ in weights]):
        raise ValuationError("bind produced an unbounded support; is f monotone?")
    return SimpleValuation(M, weights)


def bind_index(f, a: IndexElement, M: FinitePoset) -> IndexElement:
    """Union over the pairs ``(r, x)`` of ``a`` of ``r * f(x)``."""
    f = _fn(f)
    if not idx_is_consistent(a):
        raise IndexError_(f"inconsistent index element {a!r}")
    pairs = []
    for r, x in a.pairs:
        v = f(x)
        if v.poset is not M and v.poset != M:
            raise IndexError_(f"f({x}) is not an index element over {M.name}")
        pairs += [(r * w, y) for w, y in v.pairs]
    out = index_element(M, pairs)
    if not idx_is_consistent(out):
        raise IndexError_("bind produced an inconsistent element; is f monotone?")
    return out


def strength_valuation(A: FinitePoset, a, mu: SimpleValuation, AB: FinitePoset | None = None) -> SimpleValuation:
    """``t(a, mu)``: push ``mu`` forward along ``b -> (a, b)``."""
    AB = AB or product(A, mu.poset)
    return bind_valuation(lambda b: val_dirac(AB, (a, b)), mu, AB)


def strength_index(A: FinitePoset, a, u: IndexElement, AB: FinitePoset | None = None) -> IndexElement:
    AB = AB or product(A, u.poset)
    return bind_index(lambda b: idx_eta(AB, (a, b)), u, AB)


def mutant_bind_valuation(f, mu: SimpleValuation, M: FinitePoset) -> SimpleValuation:
    """A broken bind: Jones's recursion without renormalizing the tail."""
    f = _fn(f)

    def combine(r, x, y):
        acc = {p: r * w for p, w in x.weights}
        for p, w in y.weights:
            acc[p] = acc.get(p, Fraction(0)) + (1 - r) * w
        return SimpleValuation(M, tuple(sorted(((p, w) for p, w in acc.items() if w), key=lambda q: M.sort_key(q[0]))))

    def lsum(items):
        if not items:
            return zero(M)
        mass = sum((r for r, _ in items), Fraction(0))
        if mass < 1:
            return combine(mass, lsum([(r / mass, x) for r, x in items]), zero(M))
        r1, x1 = items[0]
        if r1 == 1:
            return x1
        return combine(r1, x1, lsum(items[1:]))  # the tail should be divided by 1 - r1

    return lsum([(r, f(x)) for x, r in mu.weights])


# -- instances --------------------------------------------------------------------

def valuation_space(L: FinitePoset, denom: int) -> tuple:
    return tuple(consistent_basis_enumerate(L, denom))


def index_space(L: FinitePoset, denom: int) -> tuple:
    """Consistent index elements with grid weights and total weight at most one."""
    weights = [w for w in farey(denom) if w > 0]
    atoms = [(w, x) for x in L.elements for w in weights]
    out = []

    def grow(start, chosen, total):
        el = index_element(L, chosen)
        if idx_is_consistent(el):
            out.append(el)
        for k in range(start, len(atoms)):
            w, x = atoms[k]
            if total + w <= 1:
                grow(k, chosen + [(w, x)], total + w)

    grow(0, [], Fraction(0))
    return tuple(dict.fromkeys(out))


@dataclass(frozen=True)
class KleisliInstance:
    name: str
    space: Callable[[FinitePoset, int], tuple]
    unit: Callable[[FinitePoset, Any], Any]
    bind: Callable[[Any, Any, FinitePoset], Any]
    leq: Callable[[Any, Any], bool]
    strength: Callable[..., Any]

    def pushforward(self, g, u, M: FinitePoset):
        """``P(g) = (eta . g)^dagger``."""
        g = _fn(g)
        return self.bind(lambda x: self.unit(M, g(x)), u, M)

    def multiply(self, W, L: FinitePoset):
        """``mu_L = id^dagger`` on an element over a space poset of ``L``."""
        return self.bind(lambda v: v, W, L)


VALUATION = KleisliInstance("valuation", valuation_space, val_dirac, bind_valuation, val_leq, strength_valuation)
INDEX = KleisliInstance("index", index_space, idx_eta, bind_index, idx_leq, strength_index)
MUTANT_VALUATION = KleisliInstance("valuation-mutant", valuation_space, val_dirac, mutant_bind_valuation,
                                   val_leq, strength_valuation)
INSTANCES = {"valuation": VALUATION, "index": INDEX}


def space_poset(elements: Sequence, leq: Callable, name: str = "") -> FinitePoset:
    """A finite poset on the given basis elements, ordered by ``leq``."""
    elements = tuple(dict.fromkeys(elements))
    up = {x: frozenset(y for y in elements if leq(x, y)) for x in elements}
    return FinitePoset(elements, up, name=name)


def monotone_maps(L: FinitePoset, S: FinitePoset):
    """All monotone maps ``L -> S`` as tuples aligned with ``L.elements``."""
    order = sorted(range(len(L)), key=lambda i: len(L.down(L.elements[i])))
    els = L.elements
    below = {i: [j for j in order[:k] if L.leq(els[j], els[i]) and j != i] for k, i in enumerate(order)}
    above = {i: [j for j in order[:k] if L.leq(els[i], els[j]) and j != i] for k, i in enumerate(order)}
    targets = S.elements
    assign = [None] * len(L)

    def rec(k):
        if k == len(order):
            yield tuple(assign)
            return
        i = order[k]
        for t in targets:
            if all(S.leq(assign[j], t) for j in below[i]) and all(S.leq(t, assign[j]) for j in above[i]):
                assign[i] = t
                yield from rec(k + 1)
        assign[i] = None

    yield from rec(0)


# -- law checking -----------------------------------------------------------------

@dataclass
class _Ctx:
    inst: KleisliInstance
    denom: int

    def __post_init__(self):
        self._spaces: dict = {}
        self._products: dict = {}

    def space(self, L: FinitePoset) -> FinitePoset:
        key = id(L)
        if key not in self._spaces:
            els = self.inst.space(L, self.denom)
            self._spaces[key] = (L, space_poset(els, self.inst.leq, name=f"P({L.name})"))
        return self._spaces[key][1]

    def product(self, A: FinitePoset, B: FinitePoset) -> FinitePoset:
        key = (id(A), id(B))
        if key not in self._products:
            self._products[key] = (A, B, product(A, B))
        return self._products[key][2]


def _witness(**kw) -> dict:
    return {k: repr(v) if not isinstance(v, str) else v for k, v in kw.items()}


def _check_unit_laws(ctx: _Ctx, posets, r1: CheckResult, r2: CheckResult):
    inst = ctx.inst
    for A in posets:
        for u in ctx.space(A).elements:
            r1.checked += 1
            got = inst.bind(lambda x: inst.unit(A, x), u, A)
            if got != u:
                r1.violations.append(_witness(poset=A.name, u=u, got=got))
    for A in posets:
        for B in posets:
            SB = ctx.space(B)
            for f in monotone_maps(A, SB):
                fm = dict(zip(A.elements, f))
                for x in A.elements:
                    r2.checked += 1
                    got = inst.bind(fm, inst.unit(A, x), B)
                    if got != fm[x]:
                        r2.violations.append(_witness(A=A.name, B=B.name, x=x, f=fm, got=got))


def _support(v) -> frozenset:
    return frozenset(v.support)


def _check_associativity(ctx: _Ctx, posets, res: CheckResult, budget: int | None, rng: random.Random):
    """``f^dagger . g^dagger = (f^dagger . g)^dagger`` over all monotone ``f, g`` and elements ``u``.

    Both sides read ``g`` only on the support of ``u`` and ``f`` only on the
    supports of those ``g``-values, so each instance ``(f, g, u)`` is decided
    by its restriction class.  One representative per class is evaluated
    (with restricted dicts, so a bind reading outside the support raises)
    and ``checked`` counts every original instance via class sizes.
    ``budget`` caps the ``f``-classes tried per ``(u, g)``-class.
    """
    inst = ctx.inst
    maps: dict = {}
    gclass: dict = {}
    fclass: dict = {}
    fmemo: dict = {}
    rmemo: dict = {}

    def maps_of(A, B):
        key = (id(A), id(B))
        if key not in maps:
            maps[key] = list(monotone_maps(A, ctx.space(B)))
        return maps[key]

    def fdag(B, C, T, fT, fm, v):
        key = (id(B), id(C), T, fT, v)
        out = fmemo.get(key)
        if out is None:
            out = fmemo[key] = inst.bind(fm, v, C)
        return out

    for A, B, C in itertools.product(posets, repeat=3):
        G, F = maps_of(A, B), maps_of(B, C)
        for u in ctx.space(A).elements:
            gkey = (id(A), id(B), u)
            classes = gclass.get(gkey)
            if classes is None:
                S = tuple(sorted(_support(u), key=A.sort_key))
                pos = [A.index(x) for x in S]
                classes = []
                for gs, mg in Counter(tuple(g[i] for i in pos) for g in G).items():
                    w = inst.bind(dict(zip(S, gs)), u, B)
                    T = tuple(sorted(frozenset().union(*(_support(v) for v in gs)), key=B.sort_key))
                    classes.append((S, gs, mg, w, T))
                gclass[gkey] = classes
            for S, gs, mg, w, T in classes:
                fkey = (id(B), id(C), T)
                fcl = fclass.get(fkey)
                if fcl is None:
                    pos = [B.index(y) for y in T]
                    fcl = fclass[fkey] = list(Counter(tuple(f[i] for i in pos) for f in F).items())
                if budget is not None and len(fcl) > budget:
                    fcl = rng.sample(fcl, budget)
                for fT, mf in fcl:
                    fm = dict(zip(T, fT))
                    lhs = fdag(B, C, T, fT, fm, w)
                    h = tuple(fdag(B, C, T, fT, fm, v) for v in gs)
                    rkey = (id(A), id(C), u, h)
                    rhs = rmemo.get(rkey)
                    if rhs is None:
                        rhs = rmemo[rkey] = inst.bind(dict(zip(S, h)), u, C)
                    res.checked += mg * mf
                    res.distinct += 1
                    if lhs != rhs:
                        res.violations.append(_witness(A=A.name, B=B.name, C=C.name, u=u,
                                                       g=dict(zip(S, gs)), f=fm, lhs=lhs, rhs=rhs))


def _check_strength(ctx: _Ctx, posets, results: list[CheckResult]):
    inst = ctx.inst
    s1, s2, s3, s4 = results
    one = FinitePoset(("*",), {"*": frozenset({"*"})}, name="1")
    # (i) P(r_A) . t_{1,A} = r_{PA}
    for A in posets:
        oneA = ctx.product(one, A)
        for u in ctx.space(A).elements:
            s1.checked += 1
            got = inst.pushforward(lambda p: p[1], inst.strength(one, "*", u, oneA), A)
            if got != u:
                s1.violations.append(_witness(A=A.name, u=u, got=got))
    # (ii) P(assoc) . t_{AxB,C} = t_{A,BxC} . (id x t_{B,C}) . assoc
    for A, B, C in itertools.product(posets, repeat=3):
        AB, BC = ctx.product(A, B), ctx.product(B, C)
        AB_C, A_BC = ctx.product(AB, C), ctx.product(A, BC)
        for w in ctx.space(C).elements:
            for a in A.elements:
                for b in B.elements:
                    s2.checked += 1
                    lhs = inst.pushforward(lambda p: (p[0][0], (p[0][1], p[1])), inst.strength(AB, (a, b), w, AB_C), A_BC)
                    rhs = inst.strength(A, a, inst.strength(B, b, w, BC), A_BC)
                    if lhs != rhs:
                        s2.violations.append(_witness(A=A.name, B=B.name, C=C.name, a=a, b=b, w=w, lhs=lhs, rhs=rhs))
    # (iii) t_{A,B} . (id x eta_B) = eta_{AxB}
    for A in posets:
        for B in posets:
            AB = ctx.product(A, B)
            for a in A.elements:
                for b in B.elements:
                    s3.checked += 1
                    got = inst.strength(A, a, inst.unit(B, b), AB)
                    if got != inst.unit(AB, (a, b)):
                        s3.violations.append(_witness(A=A.name, B=B.name, a=a, b=b, got=got))
    # (iv) t_{A,B} . (id x mu_B) = mu_{AxB} . P(t_{A,B}) . t_{A,PB}
    for A in posets:
        for B in posets:
            AB = ctx.product(A, B)
            SB = ctx.space(B)
            A_SB = ctx.product(A, SB)
            images = [inst.strength(A, a, v, AB) for a in A.elements for v in SB.elements]
            S_AB = space_poset(images, inst.leq, name=f"P({AB.name})")
            t_AB = lambda p: inst.strength(A, p[0], p[1], AB)
            for W in ctx.space(SB).elements:
                muW = inst.multiply(W, B)
                for a in A.elements:
                    s4.checked += 1
                    lhs = inst.strength(A, a, muW, AB)
                    rhs = inst.multiply(inst.pushforward(t_AB, inst.strength(A, a, W, A_SB), S_AB), AB)
                    if lhs != rhs:
                        s4.violations.append(_witness(A=A.name, B=B.name, a=a, W=W, lhs=lhs, rhs=rhs))


def check_monad_laws(inst: KleisliInstance, posets: Sequence[FinitePoset], denom: int = 2,
                     budget: int | None = None, seed: int = 0, strength: bool = True) -> Report:
    """Kleisli equations (i)-(iii) and strength equations (i)-(iv) over ``posets``.

    Elements range over the grid space of each poset and maps over all
    monotone maps into those spaces.  ``budget`` caps the number of
    ``(f, g)`` pairs per poset triple in the associativity check (sampled
    with ``seed``); None means exhaustive.
    """
    ctx = _Ctx(inst, denom)
    rng = random.Random(seed)
    report = Report(f"{inst.name} monad", "exhaustive" if budget is None else "sampled")
    k1, k2, k3 = CheckResult("kleisli (i)"), CheckResult("kleisli (ii)"), CheckResult("kleisli (iii)")
    _check_unit_laws(ctx, posets, k1, k2)
    _check_associativity(ctx, posets, k3, budget, rng)
    report.results += [k1, k2, k3]
    if strength:
        st = [CheckResult(f"strength ({n})") for n in ("i", "ii", "iii", "iv")]
        _check_strength(ctx, posets, st)
        report.results += st
    return report


def check_naturality(inst: KleisliInstance, L: FinitePoset, M: FinitePoset) -> CheckResult:
    """``bind(eta_M . g, eta_L(x)) = eta_M(g(x))`` for every monotone ``g : L -> M``."""
    res = CheckResult("naturality of eta")
    for g in monotone_maps(L, M):
        gm = dict(zip(L.elements, g))
        for x in L.elements:
            res.checked += 1
            if inst.pushforward(gm, inst.unit(L, x), M) != inst.unit(M, gm[x]):
                res.violations.append(_witness(x=x, g=gm))
    return res
