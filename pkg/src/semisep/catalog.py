"""Named small categories, functors and adjunctions used by the bundled
corpus and the tests."""
from .fincat import (
    FinCategory, FinFunctor, category_from_maps, enumerate_functors, identity_functor, monoid_category, poset_category,
)
from .adjunction import AdjointTriple, adjunction_structures, make_adjunction


def terminal():
    return FinCategory(["*"], {}, {"*": "1"}, {}, name="terminal")


def empty():
    return FinCategory([], {}, {}, {}, name="empty")


def interval():
    return FinCategory(["A", "B"], {("A", "B"): ["u"]}, {"A": "idA", "B": "idB"}, {}, name="interval")


def parallel_pair():
    return FinCategory(["A", "B"], {("A", "B"): ["f", "g"]}, {"A": "idA", "B": "idB"}, {},
                       name="parallel_pair")


def discrete(n=2):
    objs = ["X%d" % i for i in range(n)]
    return FinCategory(objs, {}, {x: "id" + x for x in objs}, {}, name="discrete%d" % n)


def chain(n):
    elems = [str(i) for i in range(n)]
    return poset_category(elems, lambda a, b: int(a) <= int(b), name="chain%d" % n)


def monoid_e():
    """One object, endomorphisms ``{1, e}`` with ``ee = e``."""
    return monoid_category(["1", "e"], [[0, 1], [1, 1]], name="monoid_e")


def monoid_c2():
    return monoid_category(["1", "t"], [[0, 1], [1, 0]], name="monoid_c2")


def left_zero():
    """``{1, a, b}`` with ``xy = x`` for ``x != 1``."""
    return monoid_category(["1", "a", "b"], [[0, 1, 2], [1, 1, 1], [2, 2, 2]], name="left_zero")


def split_pair():
    """``A`` retracts onto ``B``: ``p: A -> B``, ``s: B -> A``, ``p o s = id``."""
    return FinCategory(["A", "B"],
                       {("A", "A"): ["idA", "e"], ("A", "B"): ["p"], ("B", "A"): ["s"]},
                       {"A": "idA", "B": "idB"},
                       {("p", "s"): "idB", ("s", "p"): "e", ("e", "e"): "e", ("p", "e"): "p",
                        ("e", "s"): "s"},
                       name="split_pair")


def vee():
    """Poset ``a <= c >= b``."""
    rel = {("a", "c"), ("b", "c")}
    return poset_category(["a", "b", "c"], lambda x, y: x == y or (x, y) in rel, name="vee")


def diamond():
    order = {"0": {"0"}, "l": {"0", "l"}, "r": {"0", "r"}, "1": {"0", "l", "r", "1"}}
    return poset_category(["0", "l", "r", "1"], lambda x, y: x in order[y], name="diamond")


def set_maps():
    """Sets of size 1 and 2 with all maps between them."""
    return category_from_maps(["P", "Q"], {"P": 1, "Q": 2},
                              {"a": ("P", "Q", (0,)), "b": ("P", "Q", (1,)), "t": ("Q", "Q", (1, 0)),
                               "c": ("Q", "P", (0, 0))}, name="set_maps")


def categories():
    return [terminal(), empty(), interval(), parallel_pair(), discrete(2), chain(2), chain(3),
            monoid_e(), monoid_c2(), left_zero(), split_pair(), vee(), diamond()]


def functor(source, target, obj_map, mor_map, name):
    F = FinFunctor(source, target, obj_map, mor_map, name=name)
    problems = F.validate()
    if problems:
        raise ValueError("%s: %s" % (name, "; ".join(problems)))
    return F


def to_terminal(C):
    T = terminal()
    return functor(C, T, {x: "*" for x in C.objects}, {f: "1" for f in C.morphisms},
                   "%s->terminal" % C.name)


def collapse():
    """Parallel pair onto the interval, ``f, g |-> u``."""
    P, I = parallel_pair(), interval()
    return functor(P, I, {"A": "A", "B": "B"}, {"idA": "idA", "idB": "idB", "f": "u", "g": "u"},
                   "collapse")


def pick_B():
    """Terminal category picking the retract ``B`` of ``split_pair``."""
    T, S = terminal(), split_pair()
    return functor(T, S, {"*": "B"}, {"1": "idB"}, "pick_B")


def named_functors():
    """Hand-picked functors plus every functor between a few small pairs."""
    out = [collapse(), to_terminal(monoid_e()), to_terminal(split_pair()), pick_B(),
           to_terminal(parallel_pair()), to_terminal(chain(3)), to_terminal(left_zero()),
           to_terminal(monoid_c2()), to_terminal(vee())]
    for C in categories():
        out.append(identity_functor(C))
    pairs = [(monoid_e(), monoid_e()), (left_zero(), monoid_e()), (monoid_e(), left_zero()),
             (chain(2), chain(3)), (chain(3), chain(2)), (split_pair(), monoid_e()),
             (monoid_e(), split_pair()), (parallel_pair(), interval()), (interval(), parallel_pair()),
             (split_pair(), chain(2)), (vee(), chain(2)), (monoid_c2(), monoid_e()),
             (monoid_e(), monoid_c2()), (left_zero(), left_zero()), (split_pair(), split_pair())]
    for C, D in pairs:
        for i, F in enumerate(enumerate_functors(C, D)):
            F.name = "%s->%s#%d" % (C.name, D.name, i)
            out.append(F)
    return out


def galois_chain():
    """``f -| g`` between the 2-chain and the 3-chain, ``f(0)=0, f(1)=2``,
    ``g = (0, 0, 1)``."""
    C2, C3 = chain(2), chain(3)

    def le(a, b):
        return "%s<=%s" % (a, b)
    fo = {"0": "0", "1": "2"}
    go = {"0": "0", "1": "0", "2": "1"}
    F = functor(C2, C3, fo, {m: le(fo[C2.src[m]], fo[C2.tgt[m]]) for m in C2.morphisms}, "f")
    G = functor(C3, C2, go, {m: le(go[C3.src[m]], go[C3.tgt[m]]) for m in C3.morphisms}, "g")
    eta = {x: le(x, go[fo[x]]) for x in C2.objects}
    eps = {y: le(fo[go[y]], y) for y in C3.objects}
    return make_adjunction(F, G, eta, eps, name="galois_chain")


def closure_top():
    """Closure ``c(x) = top`` on the 3-chain as inclusion of ``{top}`` into
    the chain with the constant reflector."""
    C3, T = chain(3), terminal()
    F = functor(C3, T, {x: "*" for x in C3.objects}, {m: "1" for m in C3.morphisms}, "reflect")
    G = functor(T, C3, {"*": "2"}, {"1": "2<=2"}, "top")
    eta = {x: "%s<=2" % x for x in C3.objects}
    return make_adjunction(F, G, eta, {"*": "1"}, name="closure_top")


def split_triple():
    """``pick_B -| to_terminal -| pick_B`` on ``split_pair``: ``B`` is a zero object."""
    S = split_pair()
    Fb = pick_B()
    Tm = to_terminal(S)
    left = make_adjunction(Fb, Tm, {"*": "1"}, {"A": "s", "B": "idB"}, name="pickB-|!")
    right = make_adjunction(Tm, Fb, {"A": "p", "B": "idB"}, {"*": "1"}, name="!-|pickB")
    return AdjointTriple(left, right, name="split_triple")


def all_adjunctions(C, D, limit=None):
    """Every adjunction ``F -| G`` with ``F: C -> D`` (one structure per pair)."""
    out = []
    for F in enumerate_functors(C, D):
        for G in enumerate_functors(D, C):
            for adj in adjunction_structures(F, G, limit=1):
                out.append(adj)
    return out
