"""The equivalences between retraction modes, functor properties and the
associated idempotent, evaluated over the functor collection."""
from corpus_data import composable_pairs, functors

from semisep.coident import factorize_semiseparable
from semisep.fincat import (
    associated_idempotent, constant_generated, decide_retraction, dualize, functor_property, nat_endo_monoid,
)


def verdicts(F):
    return {m: decide_retraction(F, m)[0] for m in ("semiseparable", "separable", "naturally_full")}


def prop(F, name):
    return functor_property(F, name)[0]


def functor_violations(F):
    v = []
    d = verdicts(F)
    ss, sep, nf = d["semiseparable"], d["separable"], d["naturally_full"]
    if sep != (ss and prop(F, "faithful")):
        v.append("separable vs semiseparable and faithful")
    if nf != (ss and prop(F, "full")):
        v.append("naturally full vs semiseparable and full")
    for other in ("maschke", "dual_maschke", "conservative"):
        if sep != (ss and prop(F, other)):
            v.append("separable vs semiseparable and %s" % other)
    if prop(F, "maschke") and prop(F, "dual_maschke") and not prop(F, "conservative"):
        v.append("Maschke and dual Maschke but not conservative")
    if ss:
        e = associated_idempotent(F, decide_retraction(F, "semiseparable")[1])
        if sep != e.is_identity():
            v.append("separable vs trivial idempotent")
        fac = factorize_semiseparable(F)
        if not fac["holds"]:
            v.append("coidentifier factorization certificate %s" % fac["certificate"])
        if fac["e"].components != e.components:
            v.append("idempotent of the factorization differs")
    else:
        # no factorization S o N: the trivial ones are excluded since F is
        # neither separable nor naturally full
        if sep or nf:
            v.append("separable or naturally full without semiseparable")
    Fop = dualize(F)
    if verdicts(Fop) != d:
        v.append("verdicts differ on the opposite functor")
    if constant_generated(F.source)[0]:
        if len(nat_endo_monoid(F.source)) != 1:
            v.append("constant generated source with a nontrivial idempotent")
        if ss != sep:
            v.append("constant generated source: semiseparable differs from separable")
    return v


def composite_violations(F, G, GF):
    v = []
    f, g, gf = verdicts(F), verdicts(G), verdicts(GF)
    if f["semiseparable"] and g["separable"] and not gf["semiseparable"]:
        v.append("semiseparable then separable is not semiseparable")
    if f["naturally_full"] and g["semiseparable"] and not gf["semiseparable"]:
        v.append("naturally full then semiseparable is not semiseparable")
    if gf["semiseparable"] and prop(G, "faithful") and not f["semiseparable"]:
        v.append("first factor of a semiseparable composite with faithful second is not semiseparable")
    return v


def run():
    """``(functor count, composite count, violations)``."""
    out = []
    fs = functors()
    for F in fs:
        out += ["%s: %s" % (F.name, m) for m in functor_violations(F)]
    n = 0
    for F, G, GF in composable_pairs():
        n += 1
        out += ["%s then %s: %s" % (F.name, G.name, m) for m in composite_violations(F, G, GF)]
    return len(fs), n, out
