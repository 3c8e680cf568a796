"""Finite posets and the order-theoretic primitives used by every other module.

Elements are arbitrary hashable identifiers (strings when loaded from JSON,
tuples for products).  The order is stored as a full closure: for each
element the frozenset of elements above it and below it.
"""
from __future__ import annotations

import itertools
import json
from typing import Hashable, Iterable, Sequence

Element = Hashable

BRUTE_FORCE_CAP = 5


class PosetError(ValueError):
    pass


class FinitePoset:
    """A finite partially ordered set, immutable after construction."""

    __slots__ = ("name", "elements", "_index", "_up", "_down", "_upsets")

    def __init__(self, elements: Sequence[Element], up: dict, name: str = ""):
        self.name = name
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._up = up
        self._down = {x: frozenset(y for y in self.elements if x in up[y]) for x in self.elements}
        self._upsets = None

    def __repr__(self):
        label = self.name or "poset"
        return f"<FinitePoset {label}: {len(self.elements)} elements>"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self._up == other._up

    def __hash__(self):
        return hash(frozenset(self.relation()))

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise PosetError(f"unknown element: {x!r}") from None

    def check(self, *xs: Element) -> None:
        for x in xs:
            if x not in self._index:
                raise PosetError(f"unknown element: {x!r}")

    def leq(self, x: Element, y: Element) -> bool:
        self.check(x, y)
        return y in self._up[x]

    def up(self, x: Element) -> frozenset:
        """The principal up-set of ``x``."""
        self.check(x)
        return self._up[x]

    def down(self, x: Element) -> frozenset:
        self.check(x)
        return self._down[x]

    def relation(self) -> list[tuple[Element, Element]]:
        """All pairs ``(x, y)`` with ``x <= y``, reflexive pairs included."""
        return [(x, y) for x in self.elements for y in self.elements if y in self._up[x]]

    def sort_key(self, x: Element) -> int:
        return self._index[x]


def build_poset(elements: Iterable[Element], relation_pairs: Iterable[tuple[Element, Element]],
                name: str = "") -> FinitePoset:
    """Reflexive-transitive closure of ``relation_pairs``, checked for antisymmetry."""
    elements = list(dict.fromkeys(elements))
    known = set(elements)
    succ: dict = {x: {x} for x in elements}
    for x, y in relation_pairs:
        for z in (x, y):
            if z not in known:
                raise PosetError(f"unknown element: {z!r}")
        succ[x].add(y)
    # Warshall over the element order
    for k in elements:
        for i in elements:
            if k in succ[i]:
                succ[i] |= succ[k]
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            if y in succ[x] and x in succ[y]:
                raise PosetError(f"antisymmetry violation: {x},{y}")
    up = {x: frozenset(succ[x]) for x in elements}
    return FinitePoset(elements, up, name=name)


def upper_bounds(P: FinitePoset, S: Iterable[Element]) -> set:
    S = list(S)
    P.check(*S)
    result = set(P.elements)
    for s in S:
        result &= P.up(s)
    return result


def lower_bounds(P: FinitePoset, S: Iterable[Element]) -> set:
    S = list(S)
    P.check(*S)
    result = set(P.elements)
    for s in S:
        result &= P.down(s)
    return result


def is_bounded(P: FinitePoset, S: Iterable[Element]) -> bool:
    """Whether ``S`` has a common upper bound."""
    return bool(upper_bounds(P, S))


def is_consistent(P: FinitePoset, x: Element, y: Element) -> bool:
    return bool(P.up(x) & P.up(y))


def is_directed(P: FinitePoset, D: Iterable[Element]) -> bool:
    D = set(D)
    if not D:
        return False
    return all(P.up(x) & P.up(y) & D for x in D for y in D)


def directed_subsets(P: FinitePoset) -> list[frozenset]:
    """Every directed subset, by exhaustive enumeration (at most BRUTE_FORCE_CAP elements)."""
    if len(P) > BRUTE_FORCE_CAP:
        raise PosetError(f"brute-force enumeration capped at {BRUTE_FORCE_CAP} elements, got {len(P)}")
    out = []
    for k in range(1, len(P) + 1):
        for D in itertools.combinations(P.elements, k):
            if is_directed(P, D):
                out.append(frozenset(D))
    return out


def _sup(P: FinitePoset, D: frozenset) -> Element | None:
    ub = upper_bounds(P, D)
    least = [u for u in ub if all(P.leq(u, v) for v in ub)]
    return least[0] if least else None


def way_below(P: FinitePoset, x: Element, y: Element, brute_force: bool = False) -> bool:
    """Whether ``x`` is way-below ``y``.

    On a finite poset every directed set contains its supremum, so this is
    ``x <= y``.  ``brute_force=True`` checks the definition directly against
    every directed subset instead.
    """
    P.check(x, y)
    if not brute_force:
        return P.leq(x, y)
    for D in directed_subsets(P):
        s = _sup(P, D)
        if s is None or not P.leq(y, s):
            continue
        if not any(P.leq(x, d) for d in D):
            return False
    return True


def up_closure(P: FinitePoset, S: Iterable[Element]) -> frozenset:
    out = set()
    for s in S:
        out |= P.up(s)
    return frozenset(out)


def down_closure(P: FinitePoset, S: Iterable[Element]) -> frozenset:
    out = set()
    for s in S:
        out |= P.down(s)
    return frozenset(out)


def scott_closure(P: FinitePoset, S: Iterable[Element]) -> frozenset:
    # directed sups add nothing on a finite poset
    return down_closure(P, S)


class UpperSet(frozenset):
    """An upward-closed subset (a Scott open) of a finite poset."""

    def __new__(cls, poset: FinitePoset, members: Iterable[Element]):
        members = frozenset(members)
        P = poset
        P.check(*members)
        for x in members:
            if not P.up(x) <= members:
                raise PosetError(f"not upward closed at {x!r}")
        obj = super().__new__(cls, members)
        obj.poset = poset
        return obj

    def __repr__(self):
        return "UpperSet({" + ", ".join(map(repr, sorted(self, key=self.poset.sort_key))) + "})"


def upper_sets(P: FinitePoset) -> list[UpperSet]:
    """All upward-closed subsets, smallest first (including the empty set and the carrier)."""
    if P._upsets is not None:
        return list(P._upsets)
    # grow antichain-generated up-sets; cheap for the small carriers used here
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for U in frontier:
            for x in P.elements:
                if x in U:
                    continue
                V = U | P.up(x)
                if V not in found:
                    found.add(V)
                    nxt.append(V)
        frontier = nxt
    ordered = sorted(found, key=lambda U: (len(U), sorted(P.index(x) for x in U)))
    P._upsets = tuple(UpperSet(P, U) for U in ordered)
    return list(P._upsets)


def product(P: FinitePoset, Q: FinitePoset, name: str = "") -> FinitePoset:
    """Pointwise-ordered product; elements are pairs ``(p, q)``."""
    elements = [(p, q) for p in P.elements for q in Q.elements]
    up = {(p, q): frozenset((p2, q2) for p2 in P.up(p) for q2 in Q.up(q)) for p, q in elements}
    return FinitePoset(elements, up, name=name or f"{P.name}x{Q.name}")


def relabel(P: FinitePoset, mapping: dict, name: str = "") -> FinitePoset:
    elements = [mapping[x] for x in P.elements]
    up = {mapping[x]: frozenset(mapping[y] for y in P.up(x)) for x in P.elements}
    return FinitePoset(elements, up, name=name or P.name)


def find_isomorphism(P: FinitePoset, Q: FinitePoset) -> dict | None:
    """An order-isomorphism ``P -> Q`` if one exists (backtracking search)."""
    if len(P) != len(Q):
        return None
    sig = lambda R, x: (len(R.up(x)), len(R.down(x)))
    ps = sorted(P.elements, key=lambda x: sig(P, x))
    mapping: dict = {}
    used: set = set()

    def extend(i):
        if i == len(ps):
            return True
        x = ps[i]
        for y in Q.elements:
            if y in used or sig(Q, y) != sig(P, x):
                continue
            if all(P.leq(x, z) == Q.leq(y, mapping[z]) and P.leq(z, x) == Q.leq(mapping[z], y)
                   for z in mapping):
                mapping[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def is_monotone(P: FinitePoset, Q_leq, f: dict) -> bool:
    """Whether ``f`` preserves the order of ``P`` into an order given by ``Q_leq``."""
    return all(Q_leq(f[x], f[y]) for x, y in P.relation() if x != y)


# -- Hasse diagrams -----------------------------------------------------------

def hasse_edges(P: FinitePoset) -> list[tuple[Element, Element]]:
    """Covering pairs: the transitive reduction of the strict order."""
    edges = []
    for x in P.elements:
        for y in P.up(x):
            if y == x:
                continue
            if not any(z != x and z != y and z in P.up(x) and y in P.up(z) for z in P.elements):
                edges.append((x, y))
    edges.sort(key=lambda e: (P.index(e[0]), P.index(e[1])))
    return edges


def _dot_id(x) -> str:
    # DOT has no \uXXXX escape, so keep non-ASCII characters literal
    return json.dumps(str(x), ensure_ascii=False)


def to_dot(P: FinitePoset, label=str) -> str:
    lines = [f"digraph {_dot_id(P.name or 'poset')} {{", "  rankdir=BT;"]
    for x in P.elements:
        lines.append(f"  {_dot_id(x)} [label={_dot_id(label(x))}];")
    for x, y in hasse_edges(P):
        lines.append(f"  {_dot_id(x)} -> {_dot_id(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON ---------------------------------------------------------------------

def poset_from_json(data: dict, name: str = "") -> FinitePoset:
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetError("poset JSON needs an 'elements' list")
    elements = data["elements"]
    if len(set(elements)) != len(elements):
        raise PosetError("duplicate element names")
    pairs = [tuple(p) for p in data.get("leq", [])]
    for p in pairs:
        if len(p) != 2:
            raise PosetError(f"relation pair must have two entries: {list(p)}")
    return build_poset(elements, pairs, name=data.get("name", name))


def poset_to_json(P: FinitePoset) -> dict:
    out = {"elements": [str(x) for x in P.elements],
           "leq": [[str(x), str(y)] for x, y in hasse_edges(P)]}
    if P.name:
        out["name"] = P.name
    return out


# -- standard posets ----------------------------------------------------------

def one_point(name: str = "one") -> FinitePoset:
    return build_poset(["a"], [], name=name)


def chain(n: int, name: str = "") -> FinitePoset:
    els = [str(i) for i in range(n)]
    return build_poset(els, list(zip(els, els[1:])), name=name or f"chain{n}")


def antichain(elements: Sequence[str], name: str = "") -> FinitePoset:
    return build_poset(elements, [], name=name or f"discrete{len(elements)}")


def vee(name: str = "vee") -> FinitePoset:
    return build_poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name=name)


def diamond(name: str = "diamond") -> FinitePoset:
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], name=name)


BUILTIN_POSETS = {
    "one": one_point,
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "discrete2": lambda: antichain(["a", "b"]),
    "discrete3": lambda: antichain(["a", "b", "c"]),
    "vee": vee,
    "diamond": diamond,
}


def all_posets(n: int) -> list[FinitePoset]:
    """One representative of every isomorphism class of ``n``-element posets.

    Elements are ``"0"..."n-1"`` and ``"i" <= "j"`` only when ``i < j``
    (the labelling is a linear extension).
    """
    labels = [str(i) for i in range(n)]
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen: set = set()
    out = []
    for bits in itertools.product((0, 1), repeat=len(slots)):
        rel = {s for s, b in zip(slots, bits) if b}
        # transitive already?
        if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        canon = min(
            tuple(sorted((perm[i], perm[j]) for i, j in rel))
            for perm in itertools.permutations(range(n))
        )
        if canon in seen:
            continue
        seen.add(canon)
        out.append(build_poset(labels, [(labels[i], labels[j]) for i, j in rel],
                               name=f"P{n}_{len(out)}"))
    return out
