import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import central_idempotents as oracle_idempotents
from randgen import random_bimodules
from semisep.algstruct import (
    Bialgebra, Bimodule, FDAlgebra, FDCoalgebra, balanced_tensor, bimodule_map_space, center_and_idempotent,
    central_idempotents, dual_module, dual_numbers, free_bimodule, ground, grouplike_coalgebra,
    ideal_coring_kxk, invariants, invariants_by_intersection, matrix_algebra, outer_bimodule, product_algebra,
    projection_map, regular_bimodule, trace_ideal_and_fgp, trivial_coring, truncated_poly, unit_map,
    upper_triangular, validate_structure, bimodule_of_map,
)
from semisep.hopf import cyclic_group, sweedler_h4
from semisep.linalg import GF, QQ


def first_projection_module():
    """``k`` as a ``(k, k x k)``-bimodule through the first projection."""
    return outer_bimodule(ground(), product_algebra(2), [[[1]]], [[[1]], [[0]]])


def test_validation_examples():
    assert validate_structure(ground()) == []
    assert validate_structure(dual_numbers()) == []
    d = dual_numbers().to_dict()
    d["mult"][0][1] = [0, 0]  # 1 * x = 0 breaks the unit law
    assert FDAlgebra.from_dict(d).validate()


def test_broken_associativity_names_the_triple():
    # a a = b, b a = a: then (a a) a = a but a (a a) = a b = 0
    A = FDAlgebra(QQ, ["1", "a", "b"],
                  [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                   [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
                   [[0, 0, 1], [0, 1, 0], [0, 0, 0]]],
                  [1, 0, 0])
    assert any(s.startswith("associativity fails at (") for s in A.validate())


def test_every_catalog_structure_validates():
    for F in (QQ, GF(3)):
        for A in (ground(F), product_algebra(3, F), dual_numbers(F), truncated_poly(3, F), upper_triangular(F),
                  matrix_algebra(2, F)):
            assert validate_structure(A) == [], A.name
    assert validate_structure(grouplike_coalgebra(["a", "b", "c"])) == []
    assert validate_structure(trivial_coring(dual_numbers())) == []
    assert validate_structure(ideal_coring_kxk()) == []
    assert validate_structure(cyclic_group(3)) == []
    assert validate_structure(sweedler_h4()) == []
    assert validate_structure(free_bimodule(3)) == []


def test_balanced_tensor_examples():
    k = ground()
    M = free_bimodule(2)
    assert balanced_tensor(M, free_bimodule(3)).dim == 6
    D = regular_bimodule(dual_numbers())
    T = balanced_tensor(D, D)
    assert T.dim == 2
    assert validate_structure(T.bimodule) == []
    P = product_algebra(2)
    right = regular_bimodule(P)
    left = outer_bimodule(P, k, [[[1]], [[0]]], [[[1]]])
    assert balanced_tensor(right, left).dim == 1
    with pytest.raises(ValueError):
        balanced_tensor(regular_bimodule(k), regular_bimodule(P))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_balanced_tensor_dimension_matches_relation_rank(seed):
    M = random_bimodules(1, seed=seed, max_dim=2)[0]
    N = regular_bimodule(M.S)
    T = balanced_tensor(M, N)
    p = M.field.p
    rels = []
    for k in range(M.S.dim):
        for i in range(M.dim):
            for j in range(N.dim):
                row = [0] * (M.dim * N.dim)
                for a in range(M.dim):
                    row[a * N.dim + j] += int(M.field.serialize(M.right[k][a][i]))
                for b in range(N.dim):
                    row[i * N.dim + b] -= int(M.field.serialize(N.left[k][b][j]))
                rels.append(row)
    r = sympy.polys.matrices.DomainMatrix.from_list_sympy(len(rels), M.dim * N.dim, rels).convert_to(
        sympy.GF(p)).rank() if rels else 0
    assert T.dim == M.dim * N.dim - r


def test_bimodule_map_space_examples():
    k = ground()
    assert len(bimodule_map_space(regular_bimodule(k), regular_bimodule(k))) == 1
    K2 = free_bimodule(2)
    K1 = free_bimodule(1)
    assert len(bimodule_map_space(K2, K1)) == 2
    # R = k[x]/x^2 acting on k through x -> 0, mapped into R: the image lies in (x)
    D = dual_numbers()
    kD = outer_bimodule(D, D, [[[1]], [[0]]], [[[1]], [[0]]])
    maps = bimodule_map_space(kD, regular_bimodule(D))
    assert len(maps) == 1
    assert maps[0] == ((0,), (1,))


def test_invariants_examples():
    M = free_bimodule(3)
    assert len(invariants(M)) == 3
    assert len(invariants(regular_bimodule(product_algebra(2)))) == 2
    assert len(invariants(regular_bimodule(matrix_algebra(2)))) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_invariants_two_ways(seed):
    M = random_bimodules(1, seed=seed)[0]
    if M.R.dim != M.S.dim or M.R.mult != M.S.mult:
        M = regular_bimodule(M.R)
    from semisep.linalg import span_basis
    a = span_basis(invariants(M), M.field) if invariants(M) else ()
    b = span_basis(invariants_by_intersection(M), M.field) if invariants_by_intersection(M) else ()
    assert a == b


def test_dual_module_examples():
    k = ground()
    assert dual_module(regular_bimodule(k)).dim == 1
    D = dual_module(first_projection_module())
    assert D.dim == 1
    assert D.maps[0] == ((1,), (0,))  # f(1) = (1, 0)
    assert validate_structure(D.bimodule) == []
    P = product_algebra(2)
    assert dual_module(regular_bimodule(P)).dim == 2


def test_double_dual_dimension_at_fgp():
    seen = 0
    for M in random_bimodules(16, seed=7):
        if not trace_ideal_and_fgp(M)["fgp"]:
            continue
        seen += 1
        D = dual_module(M)
        assert validate_structure(D.bimodule) == []
        DD = dual_module(D.bimodule, side="left")
        assert validate_structure(DD.bimodule) == []
        assert DD.dim == M.dim
    assert seen >= 6


def test_center_and_idempotent():
    P = product_algebra(2)
    assert center_and_idempotent(P, P.unit)["central_idempotent"]
    assert center_and_idempotent(P, (1, 0))["central_idempotent"]
    assert not center_and_idempotent(dual_numbers(), (0, 1))["central_idempotent"]
    assert len(center_and_idempotent(matrix_algebra(2))["center"]) == 1
    assert len(center_and_idempotent(upper_triangular())["center"]) == 1


# central idempotent counts over F_p for p in 2, 3, 5, from the oracle
FROZEN_IDEMPOTENTS = {"k": 2, "k^2": 4, "k^3": 8, "k[x]/(x^2)": 2, "k[x]/(x^3)": 2, "T2": 2, "M2": 2}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_central_idempotents_frozen(p):
    F = GF(p)
    for A in (ground(F), product_algebra(2, F), product_algebra(3, F), dual_numbers(F), truncated_poly(3, F),
              upper_triangular(F), matrix_algebra(2, F)):
        found = sorted(tuple(F.serialize(c) for c in z) for z in central_idempotents(A))
        assert len(found) == FROZEN_IDEMPOTENTS[A.name]
        assert found == sorted(oracle_idempotents(A.to_dict(), p))


def test_trace_ideal_examples():
    P = product_algebra(2)
    t = trace_ideal_and_fgp(regular_bimodule(P))
    assert t["generator"] and t["fgp"]
    t = trace_ideal_and_fgp(first_projection_module())
    assert t["fgp"] and not t["generator"]
    assert t["trace_ideal"] == [(1, 0)]
    for n in (1, 2, 3):
        t = trace_ideal_and_fgp(free_bimodule(n))
        assert t["generator"] and t["fgp"]
    # k over k[x]/x^2 through x -> 0 is neither projective nor a generator
    D = dual_numbers()
    t = trace_ideal_and_fgp(outer_bimodule(ground(), D, [[[1]]], [[[1]], [[0]]]))
    assert not t["fgp"] and not t["generator"]


def test_bimodule_validation_catches_noncommuting_actions():
    P = product_algebra(2)
    M = regular_bimodule(P)
    bad = Bimodule(P, P, 2, M.left, [M.right[0], ((0, 1), (1, 0))])
    assert bad.validate()


def test_bialgebra_and_coalgebra_checks():
    C = grouplike_coalgebra(["a", "b"])
    assert C.validate() == []
    d = C.to_dict()
    d["eps"] = [1, 0]
    assert FDCoalgebra.from_dict(d).validate()
    B = cyclic_group(2)
    d = B.to_dict()
    d["coalgebra"]["eps"] = [1, 0]
    assert Bialgebra.from_dict(d).validate()


def test_unit_and_projection_maps_validate():
    for phi in (unit_map(dual_numbers()), projection_map(product_algebra(2)), unit_map(matrix_algebra(2))):
        assert phi.validate() == []
    assert validate_structure(bimodule_of_map(unit_map(dual_numbers()))) == []
