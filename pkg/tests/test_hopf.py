import pytest

from oracles import coalgebra_maps, right_antipodes
from semisep.algstruct import grouplike_coalgebra
from semisep.hopf import (
    AntipodeCandidate, build_named, coalgebra_map_verify, coinvariant_verdict, cyclic_group, find_right_antipode,
    group_algebra, group_inverse, grouplike_verify, h4_antipode, h4_coalgebra_map, is_grouplike, monoid_bialgebra,
    sweedler_h4, verify_antipode_properties,
)
from semisep.linalg import GF, QQ


def monoid_1a(field=QQ):
    return monoid_bialgebra(["1", "a"], [[0, 1], [1, 1]], field)


def test_trivial_bialgebra():
    B = monoid_bialgebra(["1"], [[0]])
    assert verify_antipode_properties(B, [[1]]) == (True, True, True)
    assert coinvariant_verdict(B).coinvariant_semiseparable == "holds"


def test_group_inverse_is_antipode():
    for n in (2, 3, 4):
        B = cyclic_group(n)
        assert verify_antipode_properties(B, group_inverse(B)) == (True, True, True)
        status, S, info = find_right_antipode(B)
        assert status == "holds" and S == group_inverse(B)
        assert info["solution_dim"] == 0


def test_h4():
    H = sweedler_h4()
    assert H.validate() == []
    assert verify_antipode_properties(H, h4_antipode()) == (True, True, True)
    v = coinvariant_verdict(H)
    assert v.coinvariant_semiseparable == "holds"
    assert v.antipode.S == h4_antipode()
    # gx = -xg in the constants: basis order 1, g, x, gx
    A = H.algebra
    g, x = A.e(1), A.e(2)
    assert A.mul(g, x) == tuple(-c for c in A.mul(x, g))
    assert A.mul(x, x) == (0, 0, 0, 0) and A.mul(g, g) == A.unit


def test_wrong_candidate_fails():
    H = sweedler_h4()
    ident = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    assert verify_antipode_properties(H, ident)[0] is False
    with pytest.raises(ValueError):
        AntipodeCandidate(H, [[1, 0], [0, 1]])


def test_monoid_is_not_hopf():
    v = coinvariant_verdict(monoid_1a())
    assert v.coinvariant_semiseparable == "fails"
    assert v.right_antipode_exists == "fails"
    assert v.infeasibility["rank_A"] < v.infeasibility["rank_Ab"]


# right antipodes over F_3 by enumerating all matrices
FROZEN_ANTIPODES = {
    "kC2": [[[1, 0], [0, 1]]],
    "kC3": [[[1, 0, 0], [0, 0, 1], [0, 1, 0]]],
    "k{1,a}": [],
}


@pytest.mark.parametrize("name", sorted(FROZEN_ANTIPODES))
def test_right_antipodes_match_oracle(name):
    F = GF(3)
    B = {"kC2": cyclic_group(2, F), "kC3": cyclic_group(3, F), "k{1,a}": monoid_1a(F)}[name]
    d = B.to_dict()
    found = right_antipodes(d["algebra"], d["coalgebra"], 3)
    assert found == FROZEN_ANTIPODES[name]
    status, S, _ = find_right_antipode(B)
    if found:
        assert status == "holds"
        assert [[F.serialize(x) for x in r] for r in S] == found[0]
    else:
        assert status == "fails" and S is None


def test_verdict_over_finite_fields():
    for p in (2, 3, 5):
        assert coinvariant_verdict(sweedler_h4(GF(p))).coinvariant_semiseparable == "holds"
        assert coinvariant_verdict(monoid_1a(GF(p))).coinvariant_semiseparable == "fails"


def test_build_named():
    C = build_named("grouplike_coalgebra", labels=["x"])
    assert C.dim == 1 and C.validate() == []
    B = build_named("group_algebra", elements=["e", "s"], table=[[0, 1], [1, 0]])
    assert B.validate() == [] and B.dim == 2
    assert build_named("sweedler_h4").dim == 4
    with pytest.raises(ValueError):
        build_named("grouplike_coalgebra", labels=["x", "x"])
    with pytest.raises(ValueError):
        build_named("nope")
    with pytest.raises(ValueError):
        group_algebra(["a", "b"], [[0, 0], [1, 1]])  # not a group
    with pytest.raises(ValueError):
        monoid_bialgebra(["a", "b"], [[0, 2], [1, 1]])


def test_grouplikes():
    C = grouplike_coalgebra(["a", "b", "c"])
    basis = [C.e(i) for i in range(3)]
    assert grouplike_verify(C, basis) == basis
    H = sweedler_h4().coalgebra
    assert is_grouplike(H, (0, 1, 0, 0))
    assert not is_grouplike(H, (0, 0, 1, 0))
    assert grouplike_verify(H, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 0, 0)]) == [
        (1, 0, 0, 0), (0, 1, 0, 0)]


def test_f_k_maps():
    maps = [h4_coalgebra_map(k) for k in (0, 1, 2)]
    H = sweedler_h4().coalgebra
    D = grouplike_coalgebra(["1", "g"])
    for f in maps:
        assert f.validate() == []
        assert coalgebra_map_verify(f.matrix, H, D)
    assert len({f.matrix for f in maps}) == 3
    # f_k(x) = k(1 - g) = f_k(xg), and xg = -gx
    for k, f in zip((0, 1, 2), maps):
        assert tuple(row[2] for row in f.matrix) == (k, -k)
        assert tuple(-row[3] for row in f.matrix) == (k, -k)
    # a map that moves x off the line spanned by 1 - g is not comultiplicative
    bad = ((1, 0, 1, 0), (0, 1, 0, 0))
    assert not coalgebra_map_verify(bad, H, D)


# coalgebra maps H4 -> k{1, g} over F_3: twenty in all, nine fixing 1 and g
def test_coalgebra_maps_from_h4_over_f3():
    F = GF(3)
    H = sweedler_h4(F).coalgebra
    D = grouplike_coalgebra(["1", "g"], F)
    found = coalgebra_maps(H.to_dict(), D.to_dict(), 3)
    assert len(found) == 20
    fixing = [f for f in found if [r[:2] for r in f] == [[1, 0], [0, 1]]]
    assert len(fixing) == 9
    for f in found:
        assert coalgebra_map_verify(f, H, D)
    for k in range(3):
        fk = h4_coalgebra_map(k, F)
        assert [[F.serialize(x) for x in r] for r in fk.matrix] in fixing


def test_one_dimensional_bialgebra_over_f7():
    B = monoid_bialgebra(["1"], [[0]], GF(7))
    assert find_right_antipode(B)[0] == "holds"
