import pytest

from corpus_data import adjunctions
from oracles import count_algebras
from semisep import catalog
from semisep.adjunction import (
    AdjointTriple, Monad, adjoint_triple, build_em, frobenius_bireflection, idempotent_adjunction_check,
    idempotent_corollary, identity_adjunction, lemma_b_profile, monad_of, rafael_regularity,
    separable_monad_check, sigma_split, ssep_monad_theorem,
)
from semisep.coident import bireflection_from_split, factorize_semiseparable, split_idempotent
from semisep.fincat import (
    NatTrans, compose_functors, decide_retraction, functor_property, identity_functor, nat_transformations,
)
from semisep.io import category_doc


def triples():
    """Every triple chained from the corpus adjunctions and the chain adjunctions."""
    pool = list(adjunctions())
    for C, D in [(catalog.terminal(), catalog.chain(3)), (catalog.chain(3), catalog.terminal()),
                 (catalog.terminal(), catalog.chain(2)), (catalog.chain(2), catalog.terminal())]:
        pool += catalog.all_adjunctions(C, D)
    return [AdjointTriple(a, b) for a in pool for b in pool if a.G.same_as(b.F)]


def test_corpus_adjunctions_validate():
    assert len(adjunctions()) >= 8
    for a in adjunctions():
        assert a.validate() == [], a.name


def test_identity_adjunction():
    C = catalog.split_pair()
    a = identity_adjunction(C)
    for side in ("left", "right"):
        r = rafael_regularity(a, side)
        assert r["regular"] and r["witness"] == C.ids
    assert lemma_b_profile(a, C.ids) == (True, True, True)
    monad, em, K, checks = build_em(a)
    assert all(checks.values())
    assert len(em.algebras) == len(C.objects)
    assert functor_property(K, "fully_faithful")[0]
    assert idempotent_adjunction_check(a)[0]
    r = ssep_monad_theorem(a)
    assert r["holds"]
    assert r["monad"]["adjoint_semiseparable"] and r["monad"]["monad_separable"] and r["monad"]["K_naturally_full"]
    ok, sigma = separable_monad_check(monad)
    assert ok and sigma.components == C.ids


def test_galois_connection_unit_is_regular():
    a = catalog.galois_chain()
    r = rafael_regularity(a, "left")
    assert r["regular"] and r["direct"]
    assert rafael_regularity(a, "right")["regular"] is False


@pytest.mark.parametrize("i", range(len(adjunctions())))
def test_rafael_cross_check(i):
    a = adjunctions()[i]
    for side in ("left", "right"):
        r = rafael_regularity(a, side)
        assert r["agree"], (a.name, side)
        if r["regular"]:
            assert r["retraction_valid"]
            assert r["idempotent_matches"]


def test_collapse_has_no_regular_unit():
    # left adjoints out of the parallel pair: none is semiseparable
    P = catalog.parallel_pair()
    found = catalog.all_adjunctions(P, catalog.terminal()) + catalog.all_adjunctions(P, P)
    for a in found:
        r = rafael_regularity(a, "left")
        assert r["agree"]
        assert r["regular"] == decide_retraction(a.F, "semiseparable")[0]


@pytest.mark.parametrize("i", range(len(adjunctions())))
def test_lemma_b_profile_on_every_candidate(i):
    a = adjunctions()[i]
    regular = rafael_regularity(a, "left")["regular"]
    seen = []
    for nu in nat_transformations(compose_functors(a.G, a.F), identity_functor(a.C)):
        seen.append(lemma_b_profile(a, nu, "left")[0])
    assert any(seen) == regular
    coregular = rafael_regularity(a, "right")["regular"]
    seen = [lemma_b_profile(a, g, "right")[0]
            for g in nat_transformations(identity_functor(a.D), compose_functors(a.F, a.G))]
    assert any(seen) == coregular


def test_closure_algebras_are_fixed_points():
    monad, em, K, checks = build_em(catalog.closure_top())
    assert all(checks.values())
    assert em.algebras == [("2", "2<=2")]
    assert functor_property(K, "fully_faithful")[0]


@pytest.mark.parametrize("i", range(len(adjunctions())))
def test_algebra_count_matches_oracle(i):
    a = adjunctions()[i]
    monad, em, K, checks = build_em(a)
    assert all(checks.values())
    T = monad.T
    n = count_algebras(category_doc(a.C), T.obj_map, T.mor_map, monad.m.components, monad.u.components)
    assert len(em.algebras) == n


def test_idempotent_monad_splits_by_inverse():
    for a in adjunctions():
        monad = monad_of(a)
        if not monad.is_idempotent():
            continue
        ok, sigma = separable_monad_check(monad)
        assert ok
        C = monad.C
        assert all(C.comp[(monad.m[x], sigma[x])] == C.ids[monad.T.ob(x)] for x in C.objects)


def test_poset_galois_connections_are_idempotent():
    for a in adjunctions():
        if all(len(ms) <= 1 for ms in a.C.homs.values()) and all(len(ms) <= 1 for ms in a.D.homs.values()):
            assert idempotent_adjunction_check(a)[0], a.name


@pytest.mark.parametrize("i", range(len(adjunctions())))
def test_ssep_monad_theorem(i):
    a = adjunctions()[i]
    r = ssep_monad_theorem(a)
    assert r["holds"], a.name
    for side in ("monad", "comonad"):
        assert r[side]["biconditional"] and r[side]["lemma_monad"] and r[side]["ff_corollary"]


def test_ssep_monad_theorem_with_failing_adjoint():
    r = ssep_monad_theorem(catalog.galois_chain())
    assert not r["monad"]["adjoint_semiseparable"]
    assert not (r["monad"]["monad_separable"] and r["monad"]["K_naturally_full"])


def test_idempotent_corollary():
    n = 0
    for a in adjunctions():
        res = idempotent_corollary(a)
        if res is None:
            continue
        n += 1
        assert res[0], a.name
    assert n >= 8


def test_monad_validation_catches_bad_multiplication():
    M = catalog.monoid_e()
    I = identity_functor(M)
    bad = Monad(I, NatTrans(compose_functors(I, I), I, {"*": "e"}), NatTrans(I, I, {"*": "1"}))
    assert bad.validate()


def test_identity_triple():
    C = catalog.interval()
    a = identity_adjunction(C)
    t = AdjointTriple(a, a)
    assert t.validate() == []
    r = adjoint_triple(t)
    assert r["holds"] and r["gamma"] == C.ids
    s = sigma_split(t)
    assert s["holds"] and s["invertible"] and s["sigma"] == C.ids


def test_split_triple():
    t = catalog.split_triple()
    assert t.validate() == []
    r = adjoint_triple(t)
    assert r["holds"]
    assert all(m["F"] and m["H"] for m in r["modes"].values())
    assert r["nu"] is not None and r["gamma_found"]


def test_all_triples():
    ts = triples()
    assert len(ts) >= 12
    not_split = 0
    for t in ts:
        assert t.validate() == []
        assert adjoint_triple(t)["holds"]
        if functor_property(t.G, "fully_faithful")[0]:
            s = sigma_split(t)
            assert s["holds"]
            not_split += not s["split_mono"]
        if functor_property(t.F, "fully_faithful")[0]:
            assert functor_property(t.H, "fully_faithful")[0]
    assert not_split > 0


def test_sigma_requires_invertible_counit():
    t = next(t for t in triples() if not functor_property(t.G, "fully_faithful")[0])
    with pytest.raises(ValueError):
        sigma_split(t)


def test_mismatched_middle_functor_rejected():
    a = catalog.galois_chain()
    t = AdjointTriple(a, catalog.split_triple().right)
    assert "the middle functors differ" in t.validate()


def test_frobenius_identity():
    a = identity_adjunction(catalog.vee())
    r = frobenius_bireflection(a.G, a, a)
    assert r["bireflection"] and r["frobenius"] and r["holds"]


def test_frobenius_split_quotient():
    F = catalog.to_terminal(catalog.split_pair())
    fac = factorize_semiseparable(F)
    b = bireflection_from_split(fac["quotient"], split_idempotent(F.source, fac["e"]))
    H = b["left"].G
    r = frobenius_bireflection(H, b["left"], b["right"])
    assert r["holds"] and r["bireflection"] and r["frobenius"]


def test_frobenius_on_triples():
    for t in triples():
        r = frobenius_bireflection(t.G, t.left, t.right)
        assert r["holds"]
        if r["coreflection"] and not r["semiseparable"]:
            assert not r["frobenius"] and not r["bireflection"]
