"""The coidentifier of an idempotent natural transformation and the
canonical factorization of a semiseparable functor through it."""
from .fincat import (
    FinCategory, FinFunctor, HomRetraction, NatTrans,
    associated_idempotent, compose_functors, decide_retraction,
    functor_property, identity_functor, DEFAULT_BOUND,
)
from .adjunction import make_adjunction


class NotLiftable(Exception):
    """The functor does not satisfy ``Fe = Id_F``."""


class CoidentifierCategory:
    """``C_e``: same objects, ``f ~ g`` iff ``e_B o f = e_B o g``.

    Each class is represented by its least member in declaration order.
    """

    def __init__(self, base, e):
        problems = e.validate()
        if problems:
            raise ValueError("not an idempotent natural transformation: " + "; ".join(problems))
        self.base = base
        self.e = e
        C = base
        self.rep = {}
        self.classes = {}
        for (a, b), ms in C.homs.items():
            seen = {}
            for f in ms:
                key = C.comp[(e[b], f)]
                if key not in seen:
                    seen[key] = f
                    self.classes[f] = [f]
                else:
                    self.classes[seen[key]].append(f)
                self.rep[f] = seen[key]
        homs = {ab: [f for f in ms if self.rep[f] == f] for ab, ms in C.homs.items()}
        comp = {}
        for f in C.morphisms:
            if self.rep[f] != f:
                continue
            for g in C.out_of(C.tgt[f]):
                if self.rep[g] == g:
                    comp[(g, f)] = self.rep[C.comp[(g, f)]]
        name = "%s_e" % C.name if C.name else None
        self.category = FinCategory(C.objects, homs, C.ids, comp, name=name)

    def congruence_violations(self):
        C = self.base
        v = []
        for f in C.morphisms:
            for g in C.out_of(C.tgt[f]):
                for f2 in self.classes[self.rep[f]]:
                    for g2 in self.classes[self.rep[g]]:
                        if self.rep[C.comp[(g, f)]] != self.rep[C.comp[(g2, f2)]]:
                            v.append("composition not well defined at (%s, %s) vs (%s, %s)"
                                     % (g, f, g2, f2))
        return v

    def quotient_functor(self):
        C = self.base
        return FinFunctor(C, self.category, {x: x for x in C.objects},
                          {f: self.rep[f] for f in C.morphisms}, name="H")

    def quotient_retraction(self):
        """``P^H(f-bar) = e_B o f`` for the quotient functor."""
        C = self.base
        H = self.quotient_functor()
        table = {}
        for x in C.objects:
            for y in C.objects:
                table[(x, y)] = {k: C.comp[(self.e[y], k)] for k in self.category.hom(x, y)}
        return HomRetraction(H, table)

    def validate(self):
        v = self.congruence_violations() + self.category.validate()
        if v:
            return v
        H = self.quotient_functor()
        v += ["H: " + s for s in H.validate()]
        P = self.quotient_retraction()
        if P.validate() or not P.satisfies("naturally_full"):
            v.append("e_B o f does not witness natural fullness of H")
        elif associated_idempotent(H, P).components != self.e.components:
            v.append("the idempotent of H differs from e")
        return v


def build_coidentifier(C, e):
    """The quotient category and quotient functor, both certified."""
    Q = CoidentifierCategory(C, e)
    problems = Q.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return Q, Q.quotient_functor()


def _fixes(F, e):
    D = F.target
    return all(F.mor(e[x]) == D.ids[F.ob(x)] for x in F.source.objects)


def induce_through(Q, F, S=None, G=None):
    """The unique ``F_e: C_e -> D`` with ``F_e o H = F``.

    With ``S`` faithful and ``G: C_e -> D'`` such that ``S o F = G o H``, the
    result also satisfies ``S o F_e = G``.
    """
    C = Q.base
    if S is not None:
        if G is None:
            raise ValueError("S and G must be given together")
        if not functor_property(S, "faithful")[0]:
            raise ValueError("S is not faithful")
        H = Q.quotient_functor()
        if not compose_functors(S, F).same_as(compose_functors(G, H)):
            raise ValueError("the square S o F = G o H does not commute")
    if not _fixes(F, Q.e):
        raise NotLiftable("Fe != Id_F")
    mor = {}
    for f in C.morphisms:
        r = Q.rep[f]
        if r in mor and mor[r] != F.mor(f):
            raise NotLiftable("F separates %s from %s" % (f, r))
        mor[r] = F.mor(f)
    Fe = FinFunctor(Q.category, F.target, dict(F.obj_map), mor,
                    name="%s_e" % F.name if F.name else None)
    problems = Fe.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    if not compose_functors(Fe, Q.quotient_functor()).same_as(F):
        raise AssertionError("F_e o H differs from F")
    if S is not None and not compose_functors(S, Fe).same_as(G):
        raise AssertionError("S o F_e differs from G")
    return Fe


def factorize_semiseparable(F, bound=DEFAULT_BOUND):
    """``F = F_e o H`` with certificates; raises if ``F`` is not semiseparable."""
    ok, P = decide_retraction(F, "semiseparable", bound)
    if not ok:
        raise ValueError("functor is not semiseparable")
    e = associated_idempotent(F, P)
    Q, H = build_coidentifier(F.source, e)
    Fe = induce_through(Q, F)
    cert = {
        "H_naturally_full": decide_retraction(H, "naturally_full", bound)[0],
        "F_e_separable": decide_retraction(Fe, "separable", bound)[0],
        "composite_is_F": compose_functors(Fe, H).same_as(F),
        "e_of_H_is_e": associated_idempotent(H, Q.quotient_retraction()).components == e.components,
    }
    return {"e": e, "quotient": Q, "H": H, "F_e": Fe, "certificate": cert,
            "holds": all(cert.values())}


class SplitWitness:
    """``pi_X: X -> P(X)`` and ``iota_X: P(X) -> X`` with
    ``iota o pi = e`` and ``pi o iota = id``."""

    def __init__(self, category, e, through, pi, iota):
        self.category = category
        self.e = e
        self.through = dict(through)
        self.pi = dict(pi)
        self.iota = dict(iota)

    def endofunctor(self):
        """``P(f) = pi_Y o f o iota_X``."""
        C = self.category
        return FinFunctor(C, C, self.through,
                          {f: C.compose(self.pi[C.tgt[f]], f, self.iota[C.src[f]]) for f in C.morphisms},
                          name="P")

    def validate(self):
        C = self.category
        v = []
        for x in C.objects:
            p, i = self.pi[x], self.iota[x]
            if (C.src[p], C.tgt[p]) != (x, self.through[x]) or (C.src[i], C.tgt[i]) != (self.through[x], x):
                v.append("splitting maps at %s have the wrong type" % x)
            elif C.comp[(i, p)] != self.e[x]:
                v.append("iota o pi != e at %s" % x)
            elif C.comp[(p, i)] != C.ids[self.through[x]]:
                v.append("pi o iota != id at %s" % x)
        if v:
            return v
        P = self.endofunctor()
        v += ["P: " + s for s in P.validate()]
        if v:
            return v
        I = identity_functor(C)
        v += ["pi: " + s for s in NatTrans(I, P, self.pi).validate()]
        v += ["iota: " + s for s in NatTrans(P, I, self.iota).validate()]
        return v

    def to_dict(self):
        return {"through": self.through, "pi": self.pi, "iota": self.iota}


def split_idempotent(C, e):
    """A natural splitting of ``e`` or ``None``.

    Every per-object splitting assembles into natural ``pi`` and ``iota``
    against ``P(f) = pi_Y o f o iota_X``, so the first splitting of each
    component (through-objects in declaration order) is taken and the
    assembled witness is re-validated.
    """
    through, pi, iota = {}, {}, {}
    for x in C.objects:
        found = None
        for p in C.objects:
            for a in C.hom(x, p):
                for b in C.hom(p, x):
                    if C.comp[(b, a)] == e[x] and C.comp[(a, b)] == C.ids[p]:
                        found = (p, a, b)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return None
        through[x], pi[x], iota[x] = found
    w = SplitWitness(C, e, through, pi, iota)
    problems = w.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return w


def bireflection_from_split(Q, w):
    """``P_e -| H -| P_e`` from a splitting, with the bireflection checks.

    ``P_e`` is the lift of ``P`` through ``H``; the left adjunction has counit
    ``iota`` and unit ``pi-bar``, the right one unit ``pi`` and counit
    ``iota-bar``.  Coherence is ``pi o iota = Id``.
    """
    problems = w.validate()
    if problems:
        raise ValueError("invalid splitting: " + "; ".join(problems))
    C = Q.base
    H = Q.quotient_functor()
    P = w.endofunctor()
    Pe = induce_through(Q, P)
    left = make_adjunction(Pe, H, {x: Q.rep[w.pi[x]] for x in C.objects}, dict(w.iota))
    right = make_adjunction(H, Pe, dict(w.pi), {x: Q.rep[w.iota[x]] for x in C.objects})
    cert = {
        "left_adjunction": not left.validate(),
        "right_adjunction": not right.validate(),
        "P_e_fully_faithful": functor_property(Pe, "fully_faithful")[0],
        "coherence": all(C.comp[(w.pi[x], w.iota[x])] == C.ids[w.through[x]] for x in C.objects),
    }
    return {"P_e": Pe, "left": left, "right": right, "certificate": cert,
            "holds": all(cert.values())}
