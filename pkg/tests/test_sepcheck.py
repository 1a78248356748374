import pytest

from oracles import coalg_map_modes, ring_ext_modes
from randgen import random_bimodules
from semisep import verify
from semisep.algstruct import (
    augmentation, bimodule_of_map, compose_maps, dual_basis_solutions, dual_numbers,
    free_bimodule, ground, grouplike_coalgebra, ideal_coring_kxk, identity_map, outer_bimodule,
    product_algebra, projection_map, regular_bimodule, set_map_coalgebra_map, trace_ideal_and_fgp,
    trivial_coring, truncated_poly, unit_map, upper_triangular, validate_structure,
)
from semisep.linalg import GF, QQ, enumerate_affine
from semisep.sepcheck import (
    _ring_ext_systems, bimodule_analyze, coalg_map_analyze, comatrix_coring, comatrix_delta_in_balanced,
    coring_analyze, coring_factorize, endo_ring_analyze, ring_ext_analyze, separability_idempotent,
    sweedler_analyze,
)

MODES = ("semiseparable", "separable", "naturally_full")


def ring_maps(F=QQ):
    D, P = dual_numbers(F), product_algebra(2, F)
    return {
        "unit_k_to_dual": unit_map(D),
        "aug_dual_to_k": augmentation(D),
        "proj_kxk_to_k": projection_map(P),
        "unit_kxk_via_k": compose_maps(unit_map(D), projection_map(P)),
        "unit_k_to_kxk": unit_map(P),
    }


def first_projection_module():
    return outer_bimodule(ground(), product_algebra(2), [[[1]]], [[[1]], [[0]]])


def test_ring_ext_examples():
    m = ring_maps()
    r = ring_ext_analyze(m["unit_k_to_dual"])
    assert r.separable and not r.naturally_full
    assert r.E["separable"] == ((1, 0),)  # E(a + bx) = a
    r = ring_ext_analyze(m["aug_dual_to_k"])
    assert not r.semiseparable and r.z is None
    assert r.infeasibility["semiseparable"]["rank_A"] < r.infeasibility["semiseparable"]["rank_Ab"]
    r = ring_ext_analyze(m["proj_kxk_to_k"])
    assert r.naturally_full and not r.separable
    assert r.E["naturally_full"] == ((1,), (0,))  # E(a) = (a, 0)
    assert r.z == (1, 0)
    r = ring_ext_analyze(m["unit_kxk_via_k"])
    assert r.semiseparable and not r.separable and not r.naturally_full


def test_non_unital_map_rejected():
    from semisep.algstruct import AlgebraMap
    P = product_algebra(2)
    with pytest.raises(ValueError):
        ring_ext_analyze(AlgebraMap(ground(), P, [[1], [0]]))


# number of E satisfying each mode over F_p, from the enumeration oracle;
# ``p`` stands for the field size
FROZEN_RING = {
    "unit_k_to_dual": ("p", "p", 0),
    "aug_dual_to_k": (0, 0, 0),
    "proj_kxk_to_k": (1, 0, 1),
    "unit_kxk_via_k": ("p", 0, 0),
    "unit_k_to_kxk": ("p", "p", 0),
}


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("name", sorted(FROZEN_RING))
def test_ring_ext_counts_match_oracle(name, p):
    phi = ring_maps(GF(p))[name]
    d = phi.to_dict()
    oracle = ring_ext_modes(d["source"], d["target"], d["matrix"], p)
    frozen = tuple(p if c == "p" else c for c in FROZEN_RING[name])
    assert tuple(oracle[m] for m in MODES) == frozen
    _, sols = _ring_ext_systems(phi)
    counts = tuple(p ** len(sols[m].kernel) if sols[m].feasible else 0 for m in MODES)
    assert counts == frozen
    r = ring_ext_analyze(phi)
    assert tuple(getattr(r, m) for m in MODES) == tuple(c > 0 for c in frozen)


@pytest.mark.parametrize("name", sorted(FROZEN_RING))
def test_ring_ext_witnesses_verify_independently(name):
    phi = ring_maps()[name]
    r = ring_ext_analyze(phi)
    for mode, E in r.E.items():
        assert verify.ring_ext_witness(phi, E, mode), mode
    assert verify.ring_ext_E_condition(phi) == r.semiseparable
    if r.semiseparable:
        assert all(r.certificates.values()), r.certificates


def test_z_uniqueness_by_enumeration():
    # every semiseparable E over F_3 gives the same z = E(1)
    for name, phi in ring_maps(GF(3)).items():
        _, sols = _ring_ext_systems(phi)
        sol = sols["semiseparable"]
        if not sol.feasible:
            continue
        r = ring_ext_analyze(phi)
        B, _ = _ring_ext_systems(phi)
        S = phi.target
        assert len(list(enumerate_affine(sol))) == 3 ** len(sol.kernel)
        zs = set()
        for point in enumerate_affine(sol):
            E = [[sum((c * b[i][j] for c, b in zip(point, B)), GF(3).zero) for j in range(S.dim)]
                 for i in range(phi.source.dim)]
            zs.add(tuple(sum((E[i][j] * S.unit[j] for j in range(S.dim)), GF(3).zero)
                         for i in range(phi.source.dim)))
        assert zs == {tuple(r.z)}, name


def coalg_maps(F=QQ):
    A = grouplike_coalgebra(["a", "b"], F)
    return {
        "merge": set_map_coalgebra_map(A, grouplike_coalgebra(["x"], F), {"a": "x", "b": "x"}),
        "include": set_map_coalgebra_map(grouplike_coalgebra(["a"], F), grouplike_coalgebra(["x", "y"], F),
                                         {"a": "x"}),
        "identity": set_map_coalgebra_map(A, A, {"a": "a", "b": "b"}),
    }


# counts of bicomodule maps chi over F_3, from the enumeration oracle
FROZEN_COALG = {"merge": (3, 3, 0), "include": (1, 0, 1), "identity": (1, 1, 1)}


@pytest.mark.parametrize("name", sorted(FROZEN_COALG))
def test_coalg_map_counts(name):
    psi = coalg_maps(GF(3))[name]
    d = psi.to_dict()
    oracle = coalg_map_modes(d["source"], d["target"], d["matrix"], 3)
    assert tuple(oracle[m] for m in MODES) == FROZEN_COALG[name]
    r = coalg_map_analyze(psi)
    assert tuple(r[m] for m in MODES) == tuple(c > 0 for c in FROZEN_COALG[name])


@pytest.mark.parametrize("name", sorted(FROZEN_COALG))
def test_coalg_witnesses(name):
    psi = coalg_maps()[name]
    r = coalg_map_analyze(psi)
    for mode, chi in r["witness"].items():
        assert verify.coalg_witness(psi, chi, mode)
    if name == "include":
        assert r["witness"]["semiseparable"] == ((1, 0),)


def test_coring_examples():
    D = dual_numbers()
    r = coring_analyze(trivial_coring(D))
    assert r.cosplit and r.semicosplit and r.z["cosplit"] == (1, 0)
    r = coring_analyze(ideal_coring_kxk())
    assert r.semicosplit and not r.cosplit
    Cr = ideal_coring_kxk()
    assert Cr.counit(r.z["semicosplit"]) == (1, 0)
    assert r.checks == {"counit_regular": True, "eps_form_agrees": True, "regularity_agrees": True}
    for mode in ("semicosplit", "natfull_G"):
        assert verify.coring_z(Cr, r.z[mode], mode)


def test_coring_factorization():
    f = coring_factorize(trivial_coring(dual_numbers()))
    assert all(f["certificate"].values())
    assert f["I"].dim == 2
    f = coring_factorize(ideal_coring_kxk())
    assert all(f["certificate"].values())
    assert f["I"].dim == 1 and f["zhat"] == (1, 0)
    with pytest.raises(ValueError):
        coring_factorize(sweedler_analyze(unit_map(dual_numbers()))["coring"])


def sweedler_cases():
    k = ground()
    return {
        "identity_k": (identity_map(k), True),
        "k_to_kxk": (unit_map(product_algebra(2)), True),
        "k_to_dual": (unit_map(dual_numbers()), False),
        "identity_dual": (identity_map(dual_numbers()), True),
        "k_to_k3": (unit_map(product_algebra(3)), True),
        "proj_kxk_to_k": (projection_map(product_algebra(2)), True),
        "k_to_T2": (unit_map(upper_triangular()), False),
        "k_to_trunc3": (unit_map(truncated_poly(3)), False),
    }


@pytest.mark.parametrize("name", sorted(sweedler_cases()))
def test_sweedler(name):
    phi, expected = sweedler_cases()[name]
    out = sweedler_analyze(phi)
    assert out["semicosplit_iff_idempotent"] and out["E_condition_agrees"]
    assert validate_structure(out["coring"]) == []
    assert out["report"].semicosplit == expected
    assert (separability_idempotent(phi) is not None) == expected
    if expected:
        z = out["report"].z["semicosplit"]
        assert verify.coring_z(out["coring"], z, "semicosplit")


def test_sweedler_idempotent_for_kxk():
    out = sweedler_analyze(unit_map(product_algebra(2)))
    assert out["coring"].dim == 4
    assert tuple(out["separability_idempotent"]) == (1, 0, 0, 1)


def test_bimodule_examples():
    P = product_algebra(2)
    r = bimodule_analyze(regular_bimodule(P))
    assert r.M_sep and r.M_semisep and r.generator
    r = bimodule_analyze(free_bimodule(3))
    assert r.M_sep
    ok, z = verify.bimodule_tensor(free_bimodule(3), r.sep_terms)
    assert ok and tuple(z) == (1,)
    r = bimodule_analyze(first_projection_module())
    assert r.M_semisep and not r.M_sep and r.z == (1, 0)
    assert all(r.certificates.values())
    r = bimodule_analyze(bimodule_of_map(unit_map(dual_numbers()), side="right"))
    assert not r.M_semisep


def test_comatrix_examples():
    for n in (1, 2):
        M = free_bimodule(n)
        tr = trace_ideal_and_fgp(M)
        Cr = comatrix_coring(M, tr["dual_basis"])
        assert validate_structure(Cr) == [] and Cr.dim == n * n
    M = first_projection_module()
    Cr = comatrix_coring(M, trace_ideal_and_fgp(M)["dual_basis"])
    assert Cr.dim == 1
    assert coring_analyze(Cr).semicosplit == bimodule_analyze(M).M_semisep


def test_comatrix_independent_of_dual_basis():
    M = free_bimodule(2, GF(3))
    sol = dual_basis_solutions(M)
    n, d = M.dim, len(sol.particular) // M.dim
    deltas = set()
    for point in list(enumerate_affine(sol))[:4]:
        basis = [(M.e(i), tuple(point[i * d:(i + 1) * d])) for i in range(n)]
        Cr = comatrix_coring(M, basis)
        deltas.add(comatrix_delta_in_balanced(Cr))
    assert len(deltas) == 1


def test_endo_ring_examples():
    P = product_algebra(2)
    out = endo_ring_analyze(regular_bimodule(P))
    assert out["E"].dim == 2 and out["agrees"]
    out = endo_ring_analyze(free_bimodule(2))
    assert out["E"].dim == 4 and out["report"].separable
    out = endo_ring_analyze(first_projection_module())
    assert out["E"].dim == 1 and out["agrees"]


@pytest.mark.parametrize("i", range(20))
def test_random_bimodules(i):
    M = random_bimodules(20, seed=1)[i]
    assert M.field == GF(5)
    r = bimodule_analyze(M)
    assert r.certificates["three_way"] and r.certificates["sep_iff_semisep_and_generator"]
    if r.M_semisep:
        ok, z = verify.bimodule_tensor(M, r.terms)
        assert ok and tuple(z) == tuple(r.z)
        assert r.certificates["z_central_idempotent"] and r.certificates["mz_is_m"]
        assert r.certificates["corner_separable"] and r.certificates["z_unique"]
    if r.fgp:
        tr = trace_ideal_and_fgp(M)
        Cr = comatrix_coring(M, tr["dual_basis"])
        assert validate_structure(Cr) == []
        assert coring_analyze(Cr).semicosplit == r.M_semisep
        assert endo_ring_analyze(M)["agrees"]
