import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poset_with_valuations, posets
from powdom.poset import antichain, chain, one_point, upper_sets, vee, way_below
from powdom.theory import KEGELSPITZE, check_laws, subalgebra_closure
from powdom.valuation import (ValuationError, consistent_basis_enumerate, linear_sum,
                              random_valuation, unit_interval, val_dirac, val_evaluate, val_free_extend,
                              val_is_consistent, val_is_consistent_brute, val_leq_pointwise, val_leq_split,
                              val_plus_r, val_scale, val_way_below, valuation, valuation_algebra,
                              valuation_from_json, valuation_to_json, zero)

V = vee()
D2 = antichain(["a", "b"])
C2 = chain(2)
half, third = F(1, 2), F(1, 3)
K = unit_interval(4)


def test_evaluate_examples():
    mu = valuation(V, {"a": half, "b": half})
    assert val_evaluate(mu, set()) == 0
    assert val_evaluate(val_dirac(V, "a"), {"a", "c"}) == 1
    assert val_evaluate(val_dirac(V, "a"), {"c"}) == 0
    assert val_evaluate(mu, {"a", "c"}) == half
    with pytest.raises(ValuationError, match="mass"):
        valuation(V, {"a": 1, "b": half})


def plan_ok(plan, mu, nu):
    L = mu.poset
    allowed = [(i, j) for i, x in enumerate(plan.rows) for j, y in enumerate(plan.cols) if L.leq(x, y)]
    return plan.is_valid([w for _, w in mu.weights], [w for _, w in nu.weights], allowed)


def test_order_examples():
    mu = valuation(V, {"a": half, "b": half})
    dc = val_dirac(V, "c")
    assert val_leq_pointwise(mu, mu)
    assert val_leq_pointwise(mu, dc)
    assert not val_leq_pointwise(dc, mu)
    plan = val_leq_split(mu, dc)
    assert plan_ok(plan, mu, dc) and plan.matrix() == [[half], [half]]
    assert val_leq_split(val_dirac(D2, "a"), val_dirac(D2, "b")) is None
    nu = valuation(V, {"a": third, "c": half})
    plan = val_leq_split(nu, nu)
    assert plan is not None and plan_ok(plan, nu, nu)


def test_way_below_examples():
    assert val_way_below(valuation(C2, {"0": half}), val_dirac(C2, "0"))
    assert not val_way_below(val_dirac(C2, "0"), val_dirac(C2, "0"))
    assert val_way_below(zero(C2), zero(C2))


def test_scale_and_plus_examples():
    mu = valuation(V, {"a": third, "c": half})
    assert val_scale(0, mu) == zero(V)
    assert val_scale(1, mu) == mu
    assert val_scale(half, val_dirac(V, "a")).as_dict() == {"a": half}
    with pytest.raises(ValuationError):
        val_scale(2, mu)
    nu = valuation(V, {"b": 1})
    assert val_plus_r(mu, nu, 1) == mu
    assert val_plus_r(mu, mu, third) == mu
    with pytest.raises(ValuationError, match="no common upper bound"):
        val_plus_r(val_dirac(D2, "a"), val_dirac(D2, "b"), half)


def test_consistency_examples():
    assert val_is_consistent(val_dirac(V, "a"), val_dirac(V, "b"))
    assert not val_is_consistent(val_dirac(D2, "a"), val_dirac(D2, "b"))
    assert val_is_consistent(val_dirac(D2, "a"), zero(D2))
    assert not val_is_consistent(valuation(D2, {"a": half, "b": half}), zero(D2))


def test_linear_sum_examples():
    assert linear_sum(K, [(1, third)]) == third
    assert linear_sum(K, [(half, third), (half, F(2, 3))], 1) == half
    assert linear_sum(K, [(half, F(1))], 1) == half
    assert linear_sum(K, []) == 0
    with pytest.raises(ValuationError, match="exceeds 1"):
        linear_sum(K, [(1, third), (half, third)])


def test_free_extend_examples():
    f = {"a": third, "b": F(2, 3), "c": F(1)}
    assert val_free_extend(f, K, valuation(V, {"a": half, "b": half})) == half
    assert val_free_extend(f, K, zero(V)) == 0
    for x in V.elements:
        assert val_free_extend(f, K, val_dirac(V, x)) == f[x]
    with pytest.raises(ValuationError, match="not monotone"):
        val_free_extend({"a": 1, "b": 0, "c": 0}, K, zero(V))
    with pytest.raises(ValuationError, match="unbounded"):
        val_free_extend({"a": 0, "b": 0}, K, valuation(D2, {"a": half, "b": half}))


def test_enumerate_examples():
    assert set(consistent_basis_enumerate(D2, 1)) == {zero(D2), val_dirac(D2, "a"), val_dirac(D2, "b")}
    assert set(consistent_basis_enumerate(D2, 2)) == {zero(D2), val_dirac(D2, "a"), val_dirac(D2, "b"),
                                                      valuation(D2, {"a": half}), valuation(D2, {"b": half})}
    P = one_point()
    assert set(consistent_basis_enumerate(P, 2)) == {zero(P), valuation(P, {"a": half}), val_dirac(P, "a")}


def test_json_round_trip():
    mu = valuation(V, {"a": half, "b": third})
    assert valuation_to_json(mu) == {"poset": "vee", "weights": {"a": "1/2", "b": "1/3"}}
    assert valuation_from_json(valuation_to_json(mu), V) == mu


def test_figure_1():
    da, db = val_dirac(D2, "a"), val_dirac(D2, "b")
    assert not val_is_consistent(da, db)
    A = valuation_algebra(D2, 2, grid=True)
    closed = subalgebra_closure(A, [da, db])
    assert closed == set(consistent_basis_enumerate(D2, 2))
    assert all(len(v.support) <= 1 for v in closed)


@pytest.mark.parametrize("L", [chain(2), vee(), antichain(["a", "b"]), chain(3)], ids=lambda L: L.name)
def test_closure_of_diracs_is_the_grid(L):
    for bound in (1, 2, 3):
        A = valuation_algebra(L, bound, grid=True, carrier=())
        assert subalgebra_closure(A, [val_dirac(L, x) for x in L.elements]) == set(consistent_basis_enumerate(L, bound))


@settings(max_examples=300)
@given(poset_with_valuations(k=2, max_size=5, denom=4))
def test_splitting_lemma(data):
    L, mu, nu = data
    plan = val_leq_split(mu, nu)
    assert (plan is not None) == val_leq_pointwise(mu, nu)
    if plan is not None:
        assert plan_ok(plan, mu, nu)


@settings(max_examples=100)
@given(poset_with_valuations(k=1, max_size=5, denom=4))
def test_modularity(data):
    L, mu = data
    ups = upper_sets(L)
    for U in ups:
        for W in ups:
            u, w = set(U), set(W)
            assert val_evaluate(mu, u) + val_evaluate(mu, w) == val_evaluate(mu, u | w) + val_evaluate(mu, u & w)
            if u <= w:
                assert val_evaluate(mu, u) <= val_evaluate(mu, w)


@settings(max_examples=200)
@given(poset_with_valuations(k=2, max_size=5, denom=4))
def test_consistency_matches_dirac_bound(data):
    L, mu, nu = data
    assert val_is_consistent(mu, nu) == val_is_consistent_brute(mu, nu)


@settings(max_examples=200)
@given(poset_with_valuations(k=2, max_size=4, denom=4))
def test_way_below_soundness(data):
    L, sigma, mu = data
    if val_way_below(sigma, mu):
        assert val_leq_pointwise(sigma, mu)


@settings(max_examples=200)
@given(poset_with_valuations(k=1, max_size=5, denom=4), st.integers(0, 2 ** 32))
def test_approximation_remark(data, seed):
    """Shrinking every weight and moving every point down gives a way-below valuation."""
    L, mu = data
    rng = random.Random(seed)
    weights = {}
    for x, w in mu.weights:
        y = rng.choice(sorted(L.down(x), key=L.sort_key))
        assert way_below(L, y, x)
        weights[y] = weights.get(y, 0) + w * rng.choice([F(0), F(1, 3), F(1, 2), F(3, 4)])
    sigma = valuation(L, weights)
    # merged points: the strict inequality survives summing, so the remark's conclusion still holds
    assert val_way_below(sigma, mu)


@settings(max_examples=150)
@given(posets(max_size=5), st.integers(0, 2 ** 32))
def test_plus_is_monotone_and_stays_below(L, seed):
    rng = random.Random(seed)
    y = rng.choice(L.elements)
    m1, m2, m3 = (random_valuation(rng, L, 4, below=y) for _ in range(3))
    r = rng.choice([F(0), F(1, 4), F(1, 2), F(1)])
    dy = val_dirac(L, y)
    assert val_leq_pointwise(val_plus_r(m1, m2, r), dy)
    if val_leq_pointwise(m1, m3):
        assert val_leq_pointwise(val_plus_r(m1, m2, r), val_plus_r(m3, m2, r))
        assert val_leq_pointwise(val_plus_r(m2, m1, r), val_plus_r(m2, m3, r))


def pointwise_sum(L, items):
    acc = {}
    for r, mu in items:
        for x, w in mu.weights:
            acc[x] = acc.get(x, 0) + r * w
    return valuation(L, acc)


def weights_summing_to_at_most_one(rng, n):
    cuts = sorted(rng.randint(0, 12) for _ in range(n))
    pts = [0] + cuts
    return [F(pts[i + 1] - pts[i], 12) for i in range(n)] if n else []


@settings(max_examples=150)
@given(posets(max_size=4), st.integers(0, 2 ** 32))
def test_kegel_equations_on_valuations(L, seed):
    rng = random.Random(seed)
    A = valuation_algebra(L, 12)
    y = rng.choice(L.elements)
    n, m = rng.randint(1, 4), rng.randint(1, 3)
    xs = [random_valuation(rng, L, 4, below=y) for _ in range(n)]
    ys = [random_valuation(rng, L, 4, below=y) for _ in range(m)]
    rs, ss = weights_summing_to_at_most_one(rng, n), weights_summing_to_at_most_one(rng, m)
    t = rng.choice([F(0), F(1, 3), F(1, 2), F(1)])
    lhs = list(zip(rs, xs))
    sx, sy = linear_sum(A, lhs), linear_sum(A, list(zip(ss, ys)))
    assert sx == pointwise_sum(L, lhs)
    # (i)
    assert val_plus_r(sx, sy, t) == linear_sum(A, [(t * r, x) for r, x in lhs] + [((1 - t) * s, v) for s, v in zip(ss, ys)])
    # (ii)
    inner = [list(zip(weights_summing_to_at_most_one(rng, 2), [random_valuation(rng, L, 4, below=y) for _ in range(2)]))
             for _ in range(n)]
    nested = linear_sum(A, [(r, linear_sum(A, it)) for r, it in zip(rs, inner)])
    assert nested == linear_sum(A, [(r * q, x) for r, it in zip(rs, inner) for q, x in it])
    # (iii)
    shuffled = lhs[:]
    rng.shuffle(shuffled)
    assert linear_sum(A, shuffled) == sx
    # (iv)
    s = rng.choice([F(0), F(1, 4), F(2, 3), F(1)])
    assert val_scale(s, sx) == linear_sum(A, [(s * r, x) for r, x in lhs])


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=5), st.randoms())
def test_linear_sum_in_unit_interval(raw, rnd):
    total = sum(a for a, _ in raw) or 1
    items = [(F(a, max(total, 6)), F(b, 6)) for a, b in raw]
    expected = sum(r * x for r, x in items)
    assert linear_sum(K, items, 1) == expected
    rnd.shuffle(items)
    assert linear_sum(K, items, 1) == expected


@settings(max_examples=100)
@given(posets(max_size=4), st.integers(0, 2 ** 32))
def test_free_extension_is_a_homomorphism(L, seed):
    rng = random.Random(seed)
    f = {}
    for x in L.elements:
        low = max((f[z] for z in L.down(x) if z in f), default=F(0))
        f[x] = rng.choice([v for v in K.carrier if v >= low])
    basis = consistent_basis_enumerate(L, 2)
    ext = {mu: val_free_extend(f, K, mu) for mu in basis}
    for x in L.elements:
        assert ext[val_dirac(L, x)] == f[x]
    for mu, nu in itertools.product(basis, repeat=2):
        if not val_is_consistent(mu, nu):
            continue
        for r in (F(0), F(1, 3), F(1, 2), F(1)):
            assert val_free_extend(f, K, val_plus_r(mu, nu, r)) == r * ext[mu] + (1 - r) * ext[nu]
        if val_leq_pointwise(mu, nu):
            assert ext[mu] <= ext[nu]
    for mu in basis:
        for r in (F(1, 4), F(2, 3)):
            assert val_free_extend(f, K, val_scale(r, mu)) == r * ext[mu]


def test_valuation_algebra_laws():
    A = valuation_algebra(vee(), 4)
    assert check_laws(A, KEGELSPITZE, mode="sampled", budget=300, seed=2).ok
    assert check_laws(valuation_algebra(D2, 2, grid=True), KEGELSPITZE).ok
