"""Command-line interface.

Exit codes: 0 success (or every checked property holds), 1 input error,
2 a property violation was found.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .basis import BasisError, basis_from_json, basis_to_dot, round_ideals
from .flow import FlowError
from .index import (EXT_RATIONALS, IndexError_, ext_rationals, idx_add, idx_free_extend, idx_leq, idx_scale,
                    idx_way_below, index_algebra, index_from_json, index_to_json)
from .monad import INSTANCES, check_monad_laws
from .poset import BUILTIN_POSETS, FinitePoset, PosetError, all_posets, poset_from_json, to_dot
from .rational import fmt, parse_rational
from .theory import (BUILTIN_THEORIES, ClosureError, TermError, TheoryError, check_laws, subalgebra_closure,
                     theory_from_json)
from .valuation import (ValuationError, unit_interval, val_dirac, val_free_extend, val_leq_pointwise,
                        val_leq_split, val_way_below, valuation_algebra, valuation_from_json,
                        valuation_to_json)

OK, INPUT_ERROR, VIOLATION = 0, 1, 2
INPUT_ERRORS = (PosetError, BasisError, ValuationError, IndexError_, TheoryError, TermError, FlowError,
                ValueError, KeyError, OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_poset(spec: str) -> FinitePoset:
    """A built-in poset name or a JSON file."""
    if spec in BUILTIN_POSETS and not Path(spec).exists():
        return BUILTIN_POSETS[spec]()
    if not Path(spec).exists():
        raise UsageError(f"unknown poset {spec!r}; built-ins: {', '.join(BUILTIN_POSETS)}")
    return poset_from_json(_read_json(spec), name=Path(spec).stem)


def _algebra(spec: str, denom: int):
    if spec == "unit-interval":
        return unit_interval(denom)
    if spec == "ext-rationals":
        return ext_rationals(denom)
    for prefix, build in (("valuations-", lambda L: valuation_algebra(L, denom, grid=True)),
                          ("index-", lambda L: index_algebra(L, denom))):
        if spec.startswith(prefix):
            return build(load_poset(spec[len(prefix):]))
    raise UsageError(f"unknown algebra {spec!r}; use unit-interval, ext-rationals, valuations-<poset>, index-<poset>")


def _theory(spec: str):
    if spec in BUILTIN_THEORIES:
        return BUILTIN_THEORIES[spec]
    if Path(spec).exists():
        return theory_from_json(_read_json(spec))
    raise UsageError(f"unknown theory {spec!r}; built-ins: {', '.join(BUILTIN_THEORIES)}")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("POWDOM_SEED", "0"))


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


# -- commands ---------------------------------------------------------------------

def cmd_poset(args) -> int:
    P = load_poset(args.file)
    if args.action == "check":
        print(f"valid: {len(P)} elements, {len(P.relation())} relation pairs")
    else:
        sys.stdout.write(to_dot(P))
    return OK


def cmd_basis(args) -> int:
    B = basis_from_json(_read_json(args.file), name=Path(args.file).stem)
    if args.action == "check":
        print(f"valid: {len(B.carrier)} elements, {len(B.prec)} relation pairs")
    elif args.action == "dot":
        sys.stdout.write(basis_to_dot(B))
    else:
        order = {x: i for i, x in enumerate(B.carrier)}
        for R in round_ideals(B):
            print("{" + ", ".join(sorted(map(str, R.members), key=lambda s: order.get(s, 0))) + "}")
    return OK


def cmd_val(args) -> int:
    L = load_poset(args.poset)
    mu = valuation_from_json(_read_json(args.mu), L)
    nu = valuation_from_json(_read_json(args.nu), L)
    if args.action == "le":
        print("true" if val_leq_pointwise(mu, nu) else "false")
    elif args.action == "wayb":
        print("true" if val_way_below(mu, nu) else "false")
    else:
        plan = val_leq_split(mu, nu)
        if plan is None:
            print("false")
            print("infeasible")
        else:
            print("true")
            _print_json(plan.to_json())
    return OK


def cmd_idx(args) -> int:
    L = load_poset(args.poset)
    if args.action == "scale":
        r = parse_rational(args.first, allow_inf=True)
        _print_json(index_to_json(idx_scale(r, index_from_json(_read_json(args.second), L))))
        return OK
    a = index_from_json(_read_json(args.first), L)
    b = index_from_json(_read_json(args.second), L)
    if args.action == "le":
        print("true" if idx_leq(a, b) else "false")
    elif args.action == "wayb":
        print("true" if idx_way_below(a, b) else "false")
    else:
        _print_json(index_to_json(idx_add(a, b)))
    return OK


def cmd_closure(args) -> int:
    if not args.algebra.startswith("valuations-"):
        raise UsageError("closure is available for valuations-<poset> algebras")
    L = load_poset(args.algebra[len("valuations-"):])
    A = valuation_algebra(L, args.denom, grid=True, carrier=())
    if args.seed_set == "diracs":
        S = [val_dirac(L, x) for x in L.elements]
    else:
        S = [valuation_from_json(d, L) for d in _read_json(args.seed_set)]
    try:
        closed = subalgebra_closure(A, S, step_cap=args.step_cap)
    except ClosureError as exc:
        print(f"error: {exc}; partial set has {len(exc.partial)} elements", file=sys.stderr)
        return VIOLATION
    items = sorted(closed, key=lambda v: (len(v.weights), [(L.sort_key(x), w) for x, w in v.weights]))
    if args.json:
        _print_json([valuation_to_json(v) for v in items])
    else:
        print(f"{len(items)} elements")
        for v in items:
            print(f"  {v!r}")
    return OK


def cmd_laws(args) -> int:
    T = _theory(args.theory)
    A = _algebra(args.algebra, args.denom)
    mode = args.mode
    if mode == "exhaustive" and A.carrier is None:
        raise UsageError(f"{A.name} has no enumerable carrier; use --mode sampled")
    report = check_laws(A, T, mode=mode, budget=args.budget, seed=_seed(args))
    if args.json:
        _print_json(report.to_json())
    else:
        print(report.summary())
        for r in report.results:
            for v in r.violations[: args.show]:
                print(f"  law {r.name} violated at {json.dumps(v, ensure_ascii=False)}")
    return OK if report.ok else VIOLATION


def cmd_monad(args) -> int:
    inst = INSTANCES[args.instance]
    posets = [P for n in range(1, args.max_poset + 1) for P in all_posets(n)]
    report = check_monad_laws(inst, posets, denom=args.denom, budget=args.budget, seed=_seed(args))
    if args.json:
        _print_json(report.to_json())
    else:
        for r in report.results:
            print(f"{r.name}: checked {r.checked}, violated {r.violated}")
        if report.ok:
            print("all Kleisli and strength laws hold")
        else:
            for r in report.results:
                for v in r.violations[:3]:
                    print(f"  {r.name} violated at {json.dumps(v, ensure_ascii=False)}")
    return OK if report.ok else VIOLATION


def cmd_free(args) -> int:
    fdata = _read_json(args.map)
    L = load_poset(fdata["poset"]) if "poset" in fdata else None
    element = _read_json(args.element)
    if L is None:
        L = load_poset(element["poset"])
    if args.target == "unit-interval":
        K = unit_interval()
        f = {x: parse_rational(v) for x, v in fdata["map"].items()}
        result = val_free_extend(f, K, valuation_from_json(element, L))
    elif args.target == "ext-rationals":
        f = {x: parse_rational(v, allow_inf=True) for x, v in fdata["map"].items()}
        result = idx_free_extend(f, EXT_RATIONALS, index_from_json(element, L))
    else:
        raise UsageError(f"unknown target {args.target!r}; use unit-interval or ext-rationals")
    print(fmt(result))
    return OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="powdom", description="Consistent power constructions over finite posets.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poset", help="validate a poset or print its Hasse diagram")
    sp.add_argument("action", choices=["check", "dot"])
    sp.add_argument("file", help="JSON poset file or built-in name")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("basis", help="validate an abstract basis, print it, or list its round ideals")
    sp.add_argument("action", choices=["check", "dot", "ideals"])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("val", help="order, Splitting-Lemma plan and way-below for simple valuations")
    sp.add_argument("action", choices=["le", "split", "wayb"])
    sp.add_argument("poset")
    sp.add_argument("mu")
    sp.add_argument("nu")
    sp.set_defaults(func=cmd_val)

    sp = sub.add_parser("idx", help="index-power order, way-below, addition and scaling")
    sp.add_argument("action", choices=["le", "wayb", "add", "scale"])
    sp.add_argument("poset")
    sp.add_argument("first", help="element file, or the scalar for 'scale'")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_idx)

    sp = sub.add_parser("closure", help="sub-algebra closure in a grid-restricted valuation algebra")
    sp.add_argument("algebra", help="valuations-<poset>")
    sp.add_argument("seed_set", help="'diracs' or a JSON list of valuations")
    sp.add_argument("--denom", type=int, default=2)
    sp.add_argument("--step-cap", type=int, default=64)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("laws", help="check a theory's laws on an algebra")
    sp.add_argument("theory")
    sp.add_argument("algebra")
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    sp.add_argument("--denom", type=int, default=2)
    sp.add_argument("--budget", type=int, default=500)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--show", type=int, default=5, help="violations to print per law")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_laws)

    sp = sub.add_parser("monad", help="check Kleisli and strength laws")
    sp.add_argument("action", choices=["check"])
    sp.add_argument("instance", choices=sorted(INSTANCES))
    sp.add_argument("--max-poset", type=int, default=3)
    sp.add_argument("--denom", type=int, default=2)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_monad)

    sp = sub.add_parser("free", help="evaluate the free extension of a monotone map")
    sp.add_argument("action", choices=["ext"])
    sp.add_argument("map", help='JSON {"poset": ..., "map": {"x": "p/q", ...}}')
    sp.add_argument("target", choices=["unit-interval", "ext-rationals"])
    sp.add_argument("element")
    sp.set_defaults(func=cmd_free)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
