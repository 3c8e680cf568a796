"""Exact rational max-flow, transport feasibility and injective matching.

All arithmetic is over ``Fraction``/``int``; capacities are scaled by the
least common denominator and the augmenting-path search runs on integers.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Sequence


class _Unbounded:
    """Explicit infinite capacity marker."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Unbounded, ())


INF = _Unbounded()


class FlowError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


@dataclass(frozen=True)
class FlowNetwork:
    nodes: tuple
    source: Hashable
    sink: Hashable
    arcs: tuple  # (tail, head, capacity) with capacity a Fraction or INF

    def __post_init__(self):
        nodes = set(self.nodes)
        if self.source not in nodes or self.sink not in nodes:
            raise FlowError("source and sink must be nodes")
        for u, v, c in self.arcs:
            if u not in nodes or v not in nodes:
                raise FlowError(f"arc {u!r}->{v!r} mentions an unknown node")
            if v == self.source:
                raise FlowError("arc into the source")
            if u == self.sink:
                raise FlowError("arc out of the sink")
            if c is not INF and _q(c).numerator < 0:
                raise FlowError(f"negative capacity on {u!r}->{v!r}")


@dataclass(frozen=True)
class FlowResult:
    value: Fraction
    raw: tuple = field(repr=False)  # scaled integer flows aligned with FlowNetwork.arcs
    scale: int = field(default=1, repr=False)

    @property
    def flows(self) -> tuple:
        return tuple(Fraction(v, self.scale) for v in self.raw)


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum s-t flow (Edmonds-Karp on the denominator-scaled network)."""
    caps = [None if c is INF else _q(c) for _, _, c in net.arcs]
    scale = lcm(*(c.denominator for c in caps if c is not None))
    idx = {x: i for i, x in enumerate(net.nodes)}
    n = len(net.nodes)
    # residual graph: arc k is stored at 2k (forward) and 2k+1 (backward)
    head: list[int] = []
    cap: list = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v, _), c in zip(net.arcs, caps):
        adj[idx[u]].append(len(head))
        head.append(idx[v])
        cap.append(None if c is None else c.numerator * (scale // c.denominator))
        adj[idx[v]].append(len(head))
        head.append(idx[u])
        cap.append(0)
    s, t = idx[net.source], idx[net.sink]
    total = 0
    while True:
        parent = [-1] * n
        parent[s] = -2
        queue = deque([s])
        while queue and parent[t] == -1:
            u = queue.popleft()
            for e in adj[u]:
                c = cap[e]
                if (c is None or c > 0) and parent[head[e]] == -1:
                    parent[head[e]] = e
                    queue.append(head[e])
        if parent[t] == -1:
            break
        bottleneck = None
        v = t
        while v != s:
            e = parent[v]
            if cap[e] is not None and (bottleneck is None or cap[e] < bottleneck):
                bottleneck = cap[e]
            v = head[e ^ 1]
        if bottleneck is None:
            raise FlowError("unbounded flow: a source-sink path has only unbounded arcs")
        v = t
        while v != s:
            e = parent[v]
            if cap[e] is not None:
                cap[e] -= bottleneck
            if cap[e ^ 1] is not None:
                cap[e ^ 1] += bottleneck
            v = head[e ^ 1]
        total += bottleneck
    raw = tuple(cap[2 * k + 1] for k in range(len(net.arcs)))
    return FlowResult(Fraction(total, scale), raw, scale)


@dataclass(frozen=True)
class TransportPlan:
    """Nonnegative matrix ``t[i, j]`` with row sums ``r`` and column sums at most ``s``."""

    rows: tuple
    cols: tuple
    entries: dict = field(hash=False)  # (i, j) -> Fraction, zero entries omitted

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def row_sum(self, i: int) -> Fraction:
        return sum((self.get(i, j) for j in range(len(self.cols))), Fraction(0))

    def col_sum(self, j: int) -> Fraction:
        return sum((self.get(i, j) for i in range(len(self.rows))), Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        return [[self.get(i, j) for j in range(len(self.cols))] for i in range(len(self.rows))]

    def is_valid(self, r: Sequence, s: Sequence, allowed: Iterable[tuple[int, int]]) -> bool:
        allowed = set(allowed)
        if any(v < 0 or (k not in allowed and v != 0) for k, v in self.entries.items()):
            return False
        return (all(self.row_sum(i) == r[i] for i in range(len(r)))
                and all(self.col_sum(j) <= s[j] for j in range(len(s))))

    def to_json(self) -> dict:
        return {"rows": [str(x) for x in self.rows], "cols": [str(y) for y in self.cols],
                "matrix": [[str(v) for v in row] for row in self.matrix()]}


def feasible_transport(r: Sequence, s: Sequence, allowed: Iterable[tuple[int, int]],
                       rows: Sequence | None = None, cols: Sequence | None = None) -> TransportPlan | None:
    """A transport plan from supplies ``r`` into capacities ``s`` along ``allowed``, or None."""
    r = [_q(x) for x in r]
    s = [_q(x) for x in s]
    if any(x.numerator < 0 for x in r) or any(x.numerator < 0 for x in s):
        raise FlowError("negative supply or capacity")
    allowed = sorted(set(allowed))
    # nodes: 0 source, 1 sink, then rows, then columns
    m = len(r)
    nodes = tuple(range(2 + m + len(s)))
    arcs = [(0, 2 + i, x) for i, x in enumerate(r)]
    arcs += [(2 + i, 2 + m + j, INF) for i, j in allowed]
    arcs += [(2 + m + j, 1, x) for j, x in enumerate(s)]
    result = max_flow(FlowNetwork(nodes, 0, 1, tuple(arcs)))
    # feasible iff every supply arc is saturated
    sc = result.scale
    if any(result.raw[i] != x.numerator * (sc // x.denominator) for i, x in enumerate(r)):
        return None
    entries = {}
    for k, (i, j) in enumerate(allowed):
        v = result.raw[len(r) + k]
        if v:
            entries[(i, j)] = Fraction(v, result.scale)
    return TransportPlan(tuple(rows) if rows is not None else tuple(range(len(r))),
                         tuple(cols) if cols is not None else tuple(range(len(s))), entries)


def injective_match(left: Sequence, right: Sequence, allowed: Iterable[tuple],
                    verify: bool = False) -> dict | None:
    """A left-saturating injective assignment respecting ``allowed``, or None.

    Kuhn's augmenting-path algorithm.  With ``verify=True`` the answer is
    cross-checked: a returned map is validated, and a failure is confirmed
    by exhibiting a subset of ``left`` violating Hall's condition.
    """
    left = list(left)
    right = list(right)
    nbrs: dict = {x: [] for x in left}
    for x, y in allowed:
        if x in nbrs:
            nbrs[x].append(y)
    match_right: dict = {}

    def augment(x, seen):
        for y in nbrs[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in match_right or augment(match_right[y], seen):
                match_right[y] = x
                return True
        return False

    ok = True
    if len(left) > len(right):
        ok = False
    else:
        for x in left:
            if not augment(x, set()):
                ok = False
                break
    result = {x: y for y, x in match_right.items()} if ok else None
    if verify:
        _verify_matching(left, right, nbrs, result)
    return result


def hall_violation(left: Sequence, nbrs: dict) -> tuple | None:
    """A subset of ``left`` with fewer neighbours than members, if any."""
    for k in range(1, len(left) + 1):
        for S in itertools.combinations(left, k):
            N = set().union(*(nbrs[x] for x in S))
            if len(N) < len(S):
                return S
    return None


def _verify_matching(left, right, nbrs, result):
    if result is not None:
        if set(result) != set(left) or len(set(result.values())) != len(result):
            raise AssertionError("matching is not a left-saturating injection")
        if any(y not in nbrs[x] or y not in right for x, y in result.items()):
            raise AssertionError("matching uses a disallowed pair")
    elif hall_violation(left, {x: set(v) & set(right) for x, v in nbrs.items()}) is None:
        raise AssertionError("no matching reported but Hall's condition holds")
