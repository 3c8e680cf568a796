"""D-algebraic theories, order bounds, and checking partial algebras against them.

A theory is a signature (total operators, parameterized operators, the
parameter posets they read) plus laws.  Operators of ``sigma0`` may carry an
order bound: ``"consistent"`` means an application is only required to exist
on tuples with a common upper bound, ``"total"`` means everywhere.  Laws are
checked with skipped-obeying semantics: an instance counts only when every
application on both sides is inside its bound and defined.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .rational import INF, EXT_NONNEG, UNIT, ParamSpace, ext_add, ext_mul, fmt, parse_rational


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


class TheoryError(ValueError):
    pass


class TermError(ValueError):
    pass


class ClosureError(RuntimeError):
    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


# -- terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class Arith:
    op: str  # one of + - * /
    args: tuple


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()
    index: Any = None  # parameter term for indexed families such as +_r


Term = Var | App
ParamTerm = Param | Const | Arith


@dataclass(frozen=True)
class Law:
    name: str
    lhs: Term
    rhs: Term
    relation: str = "eq"  # "eq" or "le"


@dataclass(frozen=True)
class TheorySpec:
    name: str
    sigma0: dict            # op -> arity
    sigma1: dict            # op -> arity
    theta: dict             # sigma1 op -> tuple of parameter-space names or "*"
    families: dict = field(default_factory=dict)  # sigma0 op -> parameter-space name indexing it
    bounds: dict = field(default_factory=dict)    # sigma0 op -> "consistent" | "total"
    laws: tuple = ()

    def __post_init__(self):
        if set(self.sigma0) & set(self.sigma1):
            raise TheoryError("sigma0 and sigma1 overlap: " + ", ".join(sorted(set(self.sigma0) & set(self.sigma1))))
        for g, arity in self.sigma1.items():
            if len(self.theta.get(g, ())) != arity:
                raise TheoryError(f"theta for {g} must list {arity} positions")
        for f in self.families:
            if f not in self.sigma0:
                raise TheoryError(f"family {f} is not in sigma0")
        for law in self.laws:
            for side in (law.lhs, law.rhs):
                self.check_term(side)
            if law.relation not in ("eq", "le"):
                raise TheoryError(f"unknown law relation {law.relation!r}")

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.sigma0.items())), tuple(sorted(self.sigma1.items()))))

    def bound(self, op: str) -> str:
        return self.bounds.get(op, "total")

    def check_term(self, t) -> None:
        if isinstance(t, Var):
            return
        if not isinstance(t, App):
            raise TermError(f"not a carrier term: {t!r}")
        if t.op in self.sigma0:
            if len(t.args) != self.sigma0[t.op]:
                raise TermError(f"{t.op} expects {self.sigma0[t.op]} arguments, got {len(t.args)}")
            if (t.op in self.families) != (t.index is not None):
                raise TermError(f"{t.op}: index parameter mismatch")
            for a in t.args:
                self.check_term(a)
        elif t.op in self.sigma1:
            if len(t.args) != self.sigma1[t.op]:
                raise TermError(f"{t.op} expects {self.sigma1[t.op]} arguments, got {len(t.args)}")
            for kind, a in zip(self.theta[t.op], t.args):
                if kind == "*":
                    self.check_term(a)
                elif not isinstance(a, (Param, Const, Arith)):
                    raise TermError(f"{t.op}: expected a parameter term, got {a!r}")
        else:
            raise TermError(f"undeclared operator {t.op!r}")

    def without(self, *law_names: str, name: str | None = None) -> "TheorySpec":
        laws = tuple(l for l in self.laws if l.name not in law_names)
        return replace(self, name=name or self.name, laws=laws)

    def with_bounds(self, kind: str, name: str | None = None) -> "TheorySpec":
        bounds = {f: kind for f, a in self.sigma0.items() if a >= 2}
        return replace(self, name=name or self.name, bounds=bounds)


def carrier_vars(t) -> list[str]:
    out: list[str] = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in out:
                out.append(u.name)
        elif isinstance(u, App):
            for a in u.args:
                walk(a)

    walk(t)
    return out


def param_vars(T: TheorySpec, *terms) -> dict[str, str]:
    """Parameter variables and the parameter space each one ranges over."""
    found: dict[str, str] = {}

    def walk_param(p, space):
        if isinstance(p, Param):
            if found.setdefault(p.name, space) != space:
                raise TermError(f"parameter {p.name} used in two parameter spaces")
        elif isinstance(p, Arith):
            for a in p.args:
                walk_param(a, space)

    def walk(u):
        if isinstance(u, App):
            if u.index is not None:
                walk_param(u.index, T.families[u.op])
            kinds = T.theta.get(u.op, ("*",) * len(u.args))
            for kind, a in zip(kinds, u.args):
                if kind == "*":
                    walk(a)
                else:
                    walk_param(a, kind)

    for t in terms:
        walk(t)
    return found


# -- partial algebras -------------------------------------------------------------

@dataclass
class PartialAlgebra:
    """A carrier with interpreted operations of a signature.

    ``ops[f]`` takes ``(index, *args)`` for indexed families and ``(*args)``
    otherwise; it may return UNDEFINED (for instance when a result leaves a
    grid-restricted carrier).  ``consistent(args)`` decides whether the
    tuple has a common upper bound in the whole carrier.
    """

    name: str
    signature: TheorySpec
    ops: dict
    leq: Callable[[Any, Any], bool]
    consistent: Callable[[Sequence], bool]
    params: dict = field(default_factory=dict)  # parameter-space name -> ParamSpace realization
    carrier: tuple | None = None
    sampler: Callable[[random.Random, int], list] | None = None
    denom: int = 2
    show: Callable[[Any], Any] = str

    def param_grid(self, space: str) -> tuple:
        return self.params[space].grid(self.denom)

    def elements(self) -> tuple:
        if self.carrier is None:
            raise TheoryError(f"{self.name}: carrier is not enumerable")
        return self.carrier


def bounded_within(A: PartialAlgebra, args: Sequence, within: Iterable) -> bool:
    return any(all(A.leq(a, s) for a in args) for s in within)


def omega_holds(A: PartialAlgebra, op: str, args: Sequence, within=None) -> bool:
    if A.signature.bound(op) == "total" or len(args) < 2:
        return True
    if within is None:
        return A.consistent(args)
    return bounded_within(A, args, within)


def apply_op(A: PartialAlgebra, op: str, index, args: Sequence, within=None):
    """Apply a sigma0 operator, UNDEFINED outside its order bound."""
    if not omega_holds(A, op, args, within):
        return UNDEFINED
    f = A.ops[op]
    return f(index, *args) if op in A.signature.families else f(*args)


def eval_param(p, env):
    if isinstance(p, Const):
        return p.value
    if isinstance(p, Param):
        try:
            return env[p.name]
        except KeyError:
            raise TermError(f"unbound parameter {p.name}") from None
    if isinstance(p, Arith):
        vals = [eval_param(a, env) for a in p.args]
        if any(v is UNDEFINED for v in vals):
            return UNDEFINED
        a, b = vals
        if p.op == "+":
            return ext_add(a, b)
        if p.op == "*":
            return ext_mul(a, b)
        if a is INF or b is INF:
            return UNDEFINED
        if p.op == "-":
            return a - b
        if p.op == "/":
            return UNDEFINED if b == 0 else Fraction(a) / b
        raise TermError(f"unknown parameter operation {p.op!r}")
    raise TermError(f"not a parameter term: {p!r}")


def eval_term(A: PartialAlgebra, t, env: dict):
    """Bottom-up evaluation; UNDEFINED propagates."""
    sig = A.signature
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise TermError(f"unbound variable {t.name}") from None
    if not isinstance(t, App):
        raise TermError(f"not a carrier term: {t!r}")
    if t.op in sig.sigma0:
        if len(t.args) != sig.sigma0[t.op]:
            raise TermError(f"{t.op} expects {sig.sigma0[t.op]} arguments, got {len(t.args)}")
        index = None
        if t.op in sig.families:
            index = eval_param(t.index, env)
            if index is UNDEFINED or not A.params[sig.families[t.op]].contains(index):
                return UNDEFINED
        args = [eval_term(A, a, env) for a in t.args]
        if any(a is UNDEFINED for a in args):
            return UNDEFINED
        return apply_op(A, t.op, index, args)
    if t.op in sig.sigma1:
        if len(t.args) != sig.sigma1[t.op]:
            raise TermError(f"{t.op} expects {sig.sigma1[t.op]} arguments, got {len(t.args)}")
        args = []
        for kind, a in zip(sig.theta[t.op], t.args):
            if kind == "*":
                v = eval_term(A, a, env)
            else:
                v = eval_param(a, env)
                if v is not UNDEFINED and not A.params[kind].contains(v):
                    v = UNDEFINED
            if v is UNDEFINED:
                return UNDEFINED
            args.append(v)
        return A.ops[t.op](*args)
    raise TermError(f"undeclared operator {t.op!r}")


# -- reports ----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    distinct: int = 0  # evaluations actually performed, when instances are grouped

    @property
    def violated(self) -> int:
        return len(self.violations)


@dataclass
class Report:
    subject: str
    mode: str
    results: list = field(default_factory=list)

    @property
    def checked(self):
        return sum(r.checked for r in self.results)

    @property
    def skipped(self):
        return sum(r.skipped for r in self.results)

    @property
    def violated(self):
        return sum(r.violated for r in self.results)

    @property
    def ok(self) -> bool:
        return self.violated == 0

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def summary(self) -> str:
        return f"checked: {self.checked}, skipped: {self.skipped}, violated: {self.violated}"

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "mode": self.mode,
            "counts": {"checked": self.checked, "skipped": self.skipped, "violated": self.violated},
            "items": [{"name": r.name, "checked": r.checked, "skipped": r.skipped, "violated": r.violated,
                       "violations": r.violations} for r in self.results],
        }


def _render(A: PartialAlgebra, env: dict, params: Iterable[str]) -> dict:
    params = set(params)
    return {k: (fmt(v) if k in params else A.show(v)) for k, v in env.items()}


def _assignments(A, names, pspaces, mode, budget, rng):
    """Yield environments for carrier variables ``names`` and parameters ``pspaces``."""
    pnames = sorted(pspaces)
    grids = [A.param_grid(pspaces[p]) for p in pnames]
    if mode == "exhaustive":
        carrier = A.elements()
        for cvals in itertools.product(carrier, repeat=len(names)):
            for pvals in itertools.product(*grids):
                env = dict(zip(names, cvals))
                env.update(zip(pnames, pvals))
                yield env
    elif mode == "sampled":
        if A.sampler is None and A.carrier is None:
            raise TheoryError(f"{A.name}: no sampler for sampled mode")
        for _ in range(budget):
            if A.sampler is not None:
                cvals = A.sampler(rng, len(names))
            else:
                cvals = [rng.choice(A.carrier) for _ in names]
            env = dict(zip(names, cvals))
            env.update((p, rng.choice(g)) for p, g in zip(pnames, grids))
            yield env
    else:
        raise TheoryError(f"unknown mode {mode!r}")


def check_laws(A: PartialAlgebra, T: TheorySpec, mode: str = "exhaustive", budget: int = 500,
               seed: int = 0) -> Report:
    """Check every law of ``T`` on ``A`` under skipped-obeying semantics."""
    if mode == "exhaustive" and A.carrier is None:
        raise TheoryError(f"exhaustive mode needs an enumerable carrier; {A.name} has none")
    rng = random.Random(seed)
    report = Report(f"{T.name} on {A.name}", mode)
    for law in T.laws:
        res = CheckResult(law.name)
        names = carrier_vars(law.lhs)
        names += [v for v in carrier_vars(law.rhs) if v not in names]
        pspaces = param_vars(T, law.lhs, law.rhs)
        for env in _assignments(A, names, pspaces, mode, budget, rng):
            lhs = eval_term(A, law.lhs, env)
            rhs = eval_term(A, law.rhs, env) if lhs is not UNDEFINED else UNDEFINED
            if lhs is UNDEFINED or rhs is UNDEFINED:
                res.skipped += 1
                continue
            res.checked += 1
            holds = lhs == rhs if law.relation == "eq" else A.leq(lhs, rhs)
            if not holds:
                res.violations.append(_render(A, env, pspaces))
        report.results.append(res)
    return report


def _op_instances(A: PartialAlgebra):
    """(op, index, positions) for every operator; positions list param spaces or "*"."""
    sig = A.signature
    for f, arity in sig.sigma0.items():
        if f not in A.ops:
            continue
        if f in sig.families:
            for r in A.param_grid(sig.families[f]):
                yield f, r, ("*",) * arity
        else:
            yield f, None, ("*",) * arity
    for g in sig.sigma1:
        if g in A.ops:
            yield g, None, sig.theta[g]


def _call(A, op, index, args, within=None):
    if op in A.signature.sigma0:
        return apply_op(A, op, index, args, within)
    return A.ops[op](*args)


def _tuples(A, positions, carrier_values, mode, budget, rng):
    grids = [None if k == "*" else A.param_grid(k) for k in positions]
    if mode == "exhaustive":
        pools = [carrier_values if g is None else g for g in grids]
        yield from itertools.product(*pools)
    else:
        for _ in range(budget):
            k = sum(g is None for g in grids)
            cvals = iter(A.sampler(rng, k) if A.sampler else [rng.choice(carrier_values) for _ in range(k)])
            yield tuple(next(cvals) if g is None else rng.choice(g) for g in grids)


def check_monotone(A: PartialAlgebra, mode: str = "exhaustive", budget: int = 200, seed: int = 0) -> Report:
    """Check that each operation preserves the order where it is defined."""
    rng = random.Random(seed)
    report = Report(f"monotonicity on {A.name}", mode)
    if mode == "exhaustive":
        pool = list(A.elements())
    else:
        pool = A.sampler(rng, budget) if A.sampler else [rng.choice(A.carrier) for _ in range(budget)]
        pool = list(dict.fromkeys(pool))
    above = {i: [j for j, y in enumerate(pool) if A.leq(x, y)] for i, x in enumerate(pool)}
    for op, index, positions in _op_instances(A):
        res = CheckResult(op if index is None else f"{op}[{fmt(index)}]")
        grids = {k: A.param_grid(k) for k in positions if k != "*"}
        slots = []
        for k in positions:
            if k == "*":
                slots.append([(i, j) for i in range(len(pool)) for j in above[i]])
            else:
                g = grids[k]
                slots.append([(a, b) for a in g for b in g if A.params[k].leq(a, b)])
        count = 0
        for combo in itertools.product(*slots):
            if mode == "sampled" and count >= budget * 10:
                break
            count += 1
            lo = [pool[i] if k == "*" else i for (i, _), k in zip(combo, positions)]
            hi = [pool[j] if k == "*" else j for (_, j), k in zip(combo, positions)]
            a = _call(A, op, index, lo)
            b = _call(A, op, index, hi)
            if a is UNDEFINED or b is UNDEFINED:
                res.skipped += 1
                continue
            res.checked += 1
            if not A.leq(a, b):
                res.violations.append({"op": op, "low": [A.show(v) if k == "*" else fmt(v) for v, k in zip(lo, positions)],
                                       "high": [A.show(v) if k == "*" else fmt(v) for v, k in zip(hi, positions)]})
        report.results.append(res)
    return report


def check_homomorphism(h, A: PartialAlgebra, B: PartialAlgebra, mode: str = "exhaustive",
                       budget: int = 500, seed: int = 0, fail_fast: bool = False) -> Report:
    """Check that ``h`` preserves order and every operation of ``A``'s signature.

    Sigma0 instances are asserted on tuples inside ``A``'s order bound whose
    image is inside ``B``'s; parameter positions of sigma1 operators are
    passed through unchanged.
    """
    hf = h if callable(h) else h.__getitem__
    rng = random.Random(seed)
    report = Report(f"homomorphism {A.name} -> {B.name}", mode)
    carrier = list(A.elements()) if mode == "exhaustive" else None
    if mode == "sampled":
        carrier = A.sampler(rng, budget) if A.sampler else [rng.choice(A.carrier) for _ in range(budget)]
        carrier = list(dict.fromkeys(carrier))

    order = CheckResult("order")
    for x in carrier:
        for y in carrier:
            if A.leq(x, y):
                order.checked += 1
                if not B.leq(hf(x), hf(y)):
                    order.violations.append({"x": A.show(x), "y": A.show(y)})
                    if fail_fast:
                        report.results.append(order)
                        return report
    report.results.append(order)

    for op, index, positions in _op_instances(A):
        res = CheckResult(op if index is None else f"{op}[{fmt(index)}]")
        for args in _tuples(A, positions, carrier, mode, budget, rng):
            a = _call(A, op, index, args)
            if a is UNDEFINED:
                res.skipped += 1
                continue
            mapped = [hf(v) if k == "*" else v for v, k in zip(args, positions)]
            b = _call(B, op, index, mapped)
            if b is UNDEFINED:
                res.skipped += 1
                continue
            res.checked += 1
            if hf(a) != b:
                res.violations.append({"args": [A.show(v) if k == "*" else fmt(v) for v, k in zip(args, positions)],
                                       "h(lhs)": B.show(hf(a)), "rhs": B.show(b)})
                if fail_fast:
                    report.results.append(res)
                    return report
        report.results.append(res)
    return report


# -- sub-algebras -----------------------------------------------------------------

def _closure_steps(A: PartialAlgebra, S: Iterable, step_cap: int):
    current = list(dict.fromkeys(S))
    members = set(current)
    ups = {x: {y for y in current if A.leq(x, y)} for x in current}
    sig = A.signature
    done: set = set()
    instances = list(_op_instances(A))
    for step in range(step_cap):
        new = []
        for op, index, positions in instances:
            grids = [None if k == "*" else A.param_grid(k) for k in positions]
            pools = [current if g is None else g for g in grids]
            consistent = op in sig.sigma0 and sig.bound(op) != "total" and len(positions) >= 2
            for args in itertools.product(*pools):
                key = (op, index, args)
                if key in done:
                    continue
                if consistent and not set.intersection(*(ups[a] for a in args)):
                    continue
                done.add(key)
                res = A.ops[op](index, *args) if op in sig.families else A.ops[op](*args)
                if res is UNDEFINED or res in members:
                    continue
                members.add(res)
                new.append(res)
        if not new:
            return current, True
        for n in new:
            ups[n] = {n}
        for n in new:
            for y in current + new:
                if y is not n and A.leq(n, y):
                    ups[n].add(y)
                if y is not n and A.leq(y, n):
                    ups[y].add(n)
        current = current + new
    return current, False


def subalgebra_closure(A: PartialAlgebra, S: Iterable, step_cap: int = 64) -> frozenset:
    """The least subset containing ``S`` closed under the bounded operations.

    Stages apply every parameterized operator (parameters from the grid)
    and every sigma0 operator to tuples with an upper bound inside the
    current stage.  Directed suprema add nothing on finite grids.
    """
    current, done = _closure_steps(A, S, step_cap)
    if not done:
        raise ClosureError(f"no fixpoint within {step_cap} stages", frozenset(current))
    return frozenset(current)


def closure_stages(A: PartialAlgebra, S: Iterable, step_cap: int = 64) -> list[frozenset]:
    """The successive stages ``S^0, S^1, ...`` up to the fixpoint."""
    stages = [frozenset(S)]
    while True:
        nxt, _ = _closure_steps(A, stages[-1], 1)
        nxt = frozenset(nxt)
        if nxt == stages[-1]:
            return stages
        stages.append(nxt)
        if len(stages) > step_cap:
            raise ClosureError(f"no fixpoint within {step_cap} stages", nxt)


def is_subalgebra(A: PartialAlgebra, S: Iterable) -> bool:
    S = list(dict.fromkeys(S))
    members = set(S)
    for op, index, positions in _op_instances(A):
        grids = [None if k == "*" else A.param_grid(k) for k in positions]
        pools = [S if g is None else g for g in grids]
        for args in itertools.product(*pools):
            res = _call(A, op, index, args, within=S)
            if res is not UNDEFINED and res not in members:
                return False
    return True


def restrict(A: PartialAlgebra, S: Iterable, name: str | None = None) -> PartialAlgebra:
    """``A`` with carrier ``S``; consistency is decided by bounds inside ``S``."""
    S = tuple(dict.fromkeys(S))
    return replace(A, name=name or f"{A.name}|sub", carrier=S, sampler=None,
                   consistent=lambda args: bounded_within(A, args, S))


# -- theory DSL -------------------------------------------------------------------

_ARITH = {"+", "-", "*", "/"}


def parse_param_term(data):
    if isinstance(data, (int, Fraction)) and not isinstance(data, bool):
        return Const(Fraction(data))
    if isinstance(data, str):
        try:
            return Const(parse_rational(data, allow_inf=True))
        except ValueError:
            return Param(data)
    if isinstance(data, list) and len(data) == 3 and data[0] in _ARITH:
        return Arith(data[0], (parse_param_term(data[1]), parse_param_term(data[2])))
    raise TermError(f"bad parameter term: {data!r}")


def parse_term(data, sigma0: dict, sigma1: dict, theta: dict, families: dict):
    if isinstance(data, str):
        return Var(data)
    if not isinstance(data, list) or not data or not isinstance(data[0], str):
        raise TermError(f"bad term: {data!r}")
    op, rest = data[0], data[1:]
    if op in sigma0:
        index = None
        if op in families:
            if not rest:
                raise TermError(f"{op} needs an index parameter")
            index, rest = parse_param_term(rest[0]), rest[1:]
        if len(rest) != sigma0[op]:
            raise TermError(f"{op} expects {sigma0[op]} arguments, got {len(rest)}")
        return App(op, tuple(parse_term(a, sigma0, sigma1, theta, families) for a in rest), index)
    if op in sigma1:
        kinds = theta[op]
        if len(rest) != len(kinds):
            raise TermError(f"{op} expects {len(kinds)} arguments, got {len(rest)}")
        args = tuple(parse_term(a, sigma0, sigma1, theta, families) if k == "*" else parse_param_term(a)
                     for k, a in zip(kinds, rest))
        return App(op, args)
    raise TermError(f"undeclared operator {op!r}")


def theory_from_json(data: dict) -> TheorySpec:
    try:
        sigma0 = dict(data.get("sigma0", {}))
        sigma1 = dict(data.get("sigma1", {}))
        theta = {g: tuple(v) for g, v in data.get("theta", {}).items()}
        families = dict(data.get("families", {}))
        laws = []
        for i, entry in enumerate(data.get("laws", [])):
            rel, lhs, rhs = entry[0], entry[1], entry[2]
            name = entry[3] if len(entry) > 3 else f"({i + 1})"
            laws.append(Law(name, parse_term(lhs, sigma0, sigma1, theta, families),
                            parse_term(rhs, sigma0, sigma1, theta, families), rel))
        return TheorySpec(data.get("name", "theory"), sigma0, sigma1, theta, families,
                          dict(data.get("bounds", {})), tuple(laws))
    except (KeyError, IndexError, TypeError) as exc:
        raise TheoryError(f"malformed theory JSON: {exc}") from None


def _param_json(p):
    if isinstance(p, Const):
        return fmt(p.value)
    if isinstance(p, Param):
        return p.name
    return [p.op, _param_json(p.args[0]), _param_json(p.args[1])]


def term_to_json(t, T: TheorySpec):
    if isinstance(t, Var):
        return t.name
    out = [t.op]
    if t.index is not None:
        out.append(_param_json(t.index))
    kinds = T.theta.get(t.op, ("*",) * len(t.args))
    out += [term_to_json(a, T) if k == "*" else _param_json(a) for k, a in zip(kinds, t.args)]
    return out


def theory_to_json(T: TheorySpec) -> dict:
    return {
        "name": T.name,
        "sigma0": dict(T.sigma0),
        "sigma1": dict(T.sigma1),
        "theta": {g: list(v) for g, v in T.theta.items()},
        "families": dict(T.families),
        "bounds": dict(T.bounds),
        "laws": [[l.relation, term_to_json(l.lhs, T), term_to_json(l.rhs, T), l.name] for l in T.laws],
    }


# -- built-in theories ------------------------------------------------------------

_CONE_JSON = {
    "name": "C",
    "sigma0": {"plus": 2, "zero": 0},
    "sigma1": {"scale": 2},
    "theta": {"scale": ["ext_nonneg", "*"]},
    "bounds": {"plus": "consistent"},
    "laws": [
        ["eq", ["plus", "x", "y"], ["plus", "y", "x"], "(1)"],
        ["eq", ["plus", ["plus", "x", "y"], "z"], ["plus", "x", ["plus", "y", "z"]], "(2)"],
        ["eq", ["plus", ["zero"], "x"], "x", "(3)"],
        ["eq", ["scale", "1", "x"], "x", "(4)"],
        ["eq", ["scale", "0", "x"], ["zero"], "(5)"],
        ["eq", ["scale", ["*", "r", "s"], "x"], ["scale", "r", ["scale", "s", "x"]], "(6)"],
        ["eq", ["scale", "r", ["plus", "x", "y"]], ["plus", ["scale", "r", "x"], ["scale", "r", "y"]], "(7)"],
        ["eq", ["scale", ["+", "r", "s"], "x"], ["plus", ["scale", "r", "x"], ["scale", "s", "x"]], "(8)"],
    ],
}

_KEGELSPITZE_JSON = {
    "name": "K",
    "sigma0": {"plus": 2, "zero": 0},
    "sigma1": {"scale": 2},
    "theta": {"scale": ["unit", "*"]},
    "families": {"plus": "unit"},
    "bounds": {"plus": "consistent"},
    "laws": [
        ["eq", ["plus", "1", "x", "y"], "x", "(1)"],
        ["eq", ["plus", "r", "x", "x"], "x", "(2)"],
        ["eq", ["plus", "r", "x", "y"], ["plus", ["-", "1", "r"], "y", "x"], "(3)"],
        ["eq", ["plus", "s", ["plus", "r", "x", "y"], "z"],
         ["plus", ["*", "r", "s"], "x",
          ["plus", ["/", ["-", "s", ["*", "r", "s"]], ["-", "1", ["*", "r", "s"]]], "y", "z"]], "(4)"],
        ["eq", ["scale", "r", "x"], ["plus", "r", "x", ["zero"]], "(5)"],
        ["eq", ["scale", "0", "x"], ["zero"], "(6a)"],
        ["eq", ["scale", "r", ["zero"]], ["zero"], "(6b)"],
        ["eq", ["scale", "1", "x"], "x", "(7)"],
        ["eq", ["scale", ["*", "r", "s"], "x"], ["scale", "r", ["scale", "s", "x"]], "(8)"],
        ["eq", ["scale", "r", ["plus", "s", "x", "y"]], ["plus", "s", ["scale", "r", "x"], ["scale", "r", "y"]], "(9)"],
    ],
}

CONE = theory_from_json(_CONE_JSON)
# The quasi-cone theory keeps distributivity over addition and drops the
# scalar-sum law: index powers satisfy r(x+y) = rx+ry but not (r+s)x = rx+sx.
QUASI_CONE = CONE.without("(8)", name="QC")
KEGELSPITZE = theory_from_json(_KEGELSPITZE_JSON)

CONE_TOTAL = CONE.with_bounds("total", name="C-total")
QUASI_CONE_TOTAL = QUASI_CONE.with_bounds("total", name="QC-total")
KEGELSPITZE_TOTAL = KEGELSPITZE.with_bounds("total", name="K-total")

BUILTIN_THEORIES = {
    "C": CONE, "QC": QUASI_CONE, "K": KEGELSPITZE,
    "C-total": CONE_TOTAL, "QC-total": QUASI_CONE_TOTAL, "K-total": KEGELSPITZE_TOTAL,
}

PARAM_SPACES = {"unit": UNIT, "ext_nonneg": EXT_NONNEG}
