import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powdom.poset import (BUILTIN_POSETS, PosetError, UpperSet, all_posets, antichain, build_poset, chain,
                          diamond, directed_subsets, down_closure, find_isomorphism, hasse_edges, is_bounded,
                          is_directed, is_monotone, one_point, poset_from_json, poset_to_json, product,
                          scott_closure, to_dot, up_closure, upper_bounds, upper_sets, vee, way_below)

from conftest import posets


def brute_upper_sets(P):
    out = set()
    for k in range(len(P) + 1):
        for S in itertools.combinations(P.elements, k):
            S = frozenset(S)
            if all(P.up(x) <= S for x in S):
                out.add(S)
    return out


def test_closure_and_antisymmetry():
    P = build_poset("abc", [("a", "b"), ("b", "c")])
    assert P.leq("a", "c") and P.leq("a", "a") and not P.leq("c", "a")
    with pytest.raises(PosetError, match="antisymmetry violation: a,b"):
        build_poset("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(PosetError, match="unknown element"):
        build_poset("ab", [("a", "z")])


def test_vee_relation_count_and_hasse():
    V = vee()
    assert len(V.relation()) == 5
    assert hasse_edges(V) == [("a", "c"), ("b", "c")]
    dot = to_dot(V)
    assert '"a" -> "c";' in dot and '"b" -> "c";' in dot and "rankdir=BT" in dot


def test_hasse_is_transitive_reduction_of_chain():
    assert hasse_edges(chain(4)) == [("0", "1"), ("1", "2"), ("2", "3")]


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16)])
def test_all_posets_counts(n, count):
    # the number of unlabeled posets: 1, 2, 5, 16
    reps = all_posets(n)
    assert len(reps) == count
    for P, Q in itertools.combinations(reps, 2):
        assert find_isomorphism(P, Q) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_way_below_equals_order_by_brute_force(n):
    for P in all_posets(n):
        for x, y in itertools.product(P.elements, repeat=2):
            assert way_below(P, x, y, brute_force=True) == P.leq(x, y)


def test_brute_force_cap():
    with pytest.raises(PosetError, match="capped"):
        directed_subsets(chain(6))


@given(posets(max_size=5))
def test_upper_sets_match_enumeration(P):
    got = upper_sets(P)
    assert set(got) == brute_upper_sets(P)
    assert len(got) == len(set(got))
    assert all(isinstance(U, UpperSet) for U in got)


@given(posets(max_size=5), st.data())
def test_scott_closed_sets_are_complements_of_upper_sets(P, data):
    S = data.draw(st.sets(st.sampled_from(P.elements)))
    C = scott_closure(P, S)
    assert C == down_closure(P, S)
    assert frozenset(P.elements) - C in set(upper_sets(P))
    assert up_closure(P, S) in set(upper_sets(P))


@given(posets(max_size=5))
def test_directed_sets_have_maximum(P):
    for D in directed_subsets(P):
        assert any(all(P.leq(d, m) for d in D) for m in D)


def test_bounds():
    V = vee()
    assert upper_bounds(V, ["a", "b"]) == {"c"}
    assert is_bounded(V, ["a", "b"])
    assert not is_bounded(antichain(["a", "b"]), ["a", "b"])
    assert is_directed(V, ["a", "c"]) and not is_directed(V, ["a", "b"]) and not is_directed(V, [])


def test_product_order():
    P = product(chain(2), vee())
    assert P.leq(("0", "a"), ("1", "c"))
    assert not P.leq(("1", "a"), ("0", "c"))
    assert len(P) == 6


def test_monotone():
    C = chain(2)
    assert is_monotone(C, lambda a, b: a <= b, {"0": 0, "1": 1})
    assert not is_monotone(C, lambda a, b: a <= b, {"0": 1, "1": 0})


@given(posets(max_size=6))
def test_json_round_trip(P):
    Q = poset_from_json(poset_to_json(P))
    assert Q == P and Q.name == P.name


def test_json_errors():
    with pytest.raises(PosetError):
        poset_from_json({"leq": []})
    with pytest.raises(PosetError, match="duplicate"):
        poset_from_json({"elements": ["a", "a"]})


def test_builtins():
    assert set(BUILTIN_POSETS) >= {"one", "chain2", "discrete2", "vee", "diamond"}
    assert len(one_point()) == 1
    D = diamond()
    assert upper_bounds(D, ["a", "b"]) == {"1"}


def test_isomorphism_found():
    P = build_poset("xyz", [("x", "z"), ("y", "z")])
    m = find_isomorphism(P, vee())
    assert m is not None and m["z"] == "c"
