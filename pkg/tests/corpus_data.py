"""The functor and adjunction collections the property suites run over."""
import functools

from semisep import catalog
from semisep.fincat import compose_functors


@functools.lru_cache(maxsize=None)
def functors():
    return tuple(catalog.named_functors())


@functools.lru_cache(maxsize=None)
def adjunctions():
    T = catalog.split_triple()
    out = [catalog.galois_chain(), catalog.closure_top(), T.left, T.right]
    pairs = [(catalog.chain(2), catalog.chain(3)), (catalog.chain(3), catalog.chain(2)),
             (catalog.terminal(), catalog.split_pair()), (catalog.split_pair(), catalog.terminal()),
             (catalog.vee(), catalog.chain(2)), (catalog.interval(), catalog.terminal()),
             (catalog.terminal(), catalog.interval())]
    for C, D in pairs:
        for i, a in enumerate(catalog.all_adjunctions(C, D)):
            a.name = "%s|%s#%d" % (C.name, D.name, i)
            out.append(a)
    return tuple(out)


def same_category(C, D):
    return C is D or C.to_dict() == D.to_dict()


def composable_pairs():
    fs = functors()
    for F in fs:
        for G in fs:
            if same_category(F.target, G.source):
                yield F, G, compose_functors(G, F)
