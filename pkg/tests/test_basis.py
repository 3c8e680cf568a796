import itertools

import pytest

from powdom.basis import (AbstractBasis, BasisError, RoundIdeal, basis_from_json, basis_to_dot, basis_to_json,
                          ideal_poset, is_round_ideal, principal_ideal, rid_way_below, round_ideals,
                          transitive_relations, validate_basis)
from powdom.poset import all_posets


P_Q = validate_basis("pq", [("p", "p"), ("p", "q")])
P_Q_REFL = validate_basis("pq", [("p", "p"), ("p", "q"), ("q", "q")])


def test_validation_examples():
    assert validate_basis("p", [("p", "p")]).prec == {("p", "p")}
    with pytest.raises(BasisError, match=r"interpolation fails at F=\{\}, z=p"):
        validate_basis("pq", [("p", "q")])
    with pytest.raises(BasisError, match="transitivity fails"):
        validate_basis("abc", [("a", "b"), ("b", "c"), ("a", "a"), ("b", "b"), ("c", "c")])
    with pytest.raises(BasisError, match="unknown element"):
        validate_basis("p", [("p", "z")])


def test_principal_ideals():
    assert principal_ideal(P_Q, "q").members == {"p"}
    assert principal_ideal(validate_basis("p", [("p", "p")]), "p").members == {"p"}
    assert principal_ideal(P_Q_REFL, "q").members == {"p", "q"}
    with pytest.raises(BasisError):
        principal_ideal(P_Q, "z")


def test_round_ideal_examples():
    assert [R.members for R in round_ideals(validate_basis("p", [("p", "p")]))] == [{"p"}]
    assert [R.members for R in round_ideals(P_Q)] == [{"p"}]
    assert sorted(len(R.members) for R in round_ideals(P_Q_REFL)) == [1, 2]


def test_rid_way_below_examples():
    p, pq = sorted(round_ideals(P_Q_REFL), key=lambda R: len(R.members))
    assert rid_way_below(p, p)
    assert rid_way_below(p, pq)
    assert not rid_way_below(pq, p)
    with pytest.raises(BasisError, match="different bases"):
        rid_way_below(p, round_ideals(P_Q)[0])


def brute_interpolates(carrier, prec):
    for k in range(len(carrier) + 1):
        for F in itertools.combinations(carrier, k):
            for z in carrier:
                if all((f, z) in prec for f in F):
                    if not any((y, z) in prec and all((f, y) in prec for f in F) for y in carrier):
                        return False
    return True


def is_transitive(prec):
    return all((x, z) in prec for (x, y) in prec for (y2, z) in prec if y == y2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_validation_agrees_with_definition(n):
    carrier = [str(i) for i in range(n)]
    pairs = [(x, y) for x in carrier for y in carrier]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        prec = frozenset(p for p, b in zip(pairs, bits) if b)
        ok = is_transitive(prec) and brute_interpolates(carrier, prec)
        try:
            validate_basis(carrier, prec)
            got = True
        except BasisError:
            got = False
        assert got == ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transitive_relations_cover_all_classes(n):
    carrier = [str(i) for i in range(n)]
    pairs = [(x, y) for x in carrier for y in carrier]
    canon = lambda rel: min(tuple(sorted((p[int(x)], p[int(y)]) for x, y in rel))
                            for p in itertools.permutations(carrier))
    every = {canon(frozenset(p for p, b in zip(pairs, bits) if b))
             for bits in itertools.product((0, 1), repeat=len(pairs))
             if is_transitive(frozenset(p for p, b in zip(pairs, bits) if b))}
    got = {canon(rel) for rel in transitive_relations(n)}
    assert got == every


def test_poset_as_basis_has_principal_ideals_only():
    for P in all_posets(4):
        B = validate_basis(P.elements, P.relation())
        ideals = {R.members for R in round_ideals(B)}
        assert ideals == {P.down(x) for x in P.elements}


def test_ideal_poset_is_inclusion_ordered():
    Q = ideal_poset(P_Q_REFL)
    small, big = sorted(Q.elements, key=len)
    assert Q.leq(small, big) and not Q.leq(big, small)


def test_json_and_dot():
    data = basis_to_json(P_Q)
    assert basis_from_json(data) == P_Q
    dot = basis_to_dot(P_Q)
    assert '"p" -> "q";' in dot
    with pytest.raises(BasisError):
        basis_from_json({"prec": []})


def test_is_round_ideal_rejects_empty_and_nonlower():
    assert not is_round_ideal(P_Q_REFL, [])
    assert not is_round_ideal(P_Q_REFL, ["q"])
