"""Finite categories given by composition tables, and deciders for functor
properties by exhaustive search.

A category stores its hom-sets in declaration order; that order fixes every
search order below and therefore every witness that is returned.
"""
import itertools

COMP_SEP = "∘"
DEFAULT_BOUND = 64


class SearchBoundExceeded(Exception):
    """A search would need to look at more structure than allowed."""


class FinCategory:
    """A finite category.

    ``homs`` maps ``(source, target)`` pairs to lists of morphism ids,
    ``ids`` maps objects to identity ids and ``comp`` maps ``(g, f)`` to the
    id of ``g o f``.  Identities need not be listed in ``homs`` and
    composites with an identity may be left out; both are filled in.
    """

    def __init__(self, objects, homs, ids, comp, name=None):
        self.name = name
        self.objects = list(objects)
        self.ids = dict(ids)
        self.homs = {}
        self.morphisms = []
        self.src = {}
        self.tgt = {}
        self.duplicates = []
        homs = {k: list(v) for k, v in homs.items()}
        declared = {m for ms in homs.values() for m in ms}
        for x in self.objects:
            i = self.ids.get(x)
            if i is not None and i not in declared:
                homs.setdefault((x, x), []).insert(0, i)
        for (a, b), ms in homs.items():
            lst = self.homs.setdefault((a, b), [])
            for m in ms:
                if m in self.src:
                    self.duplicates.append(m)
                    continue
                lst.append(m)
                self.morphisms.append(m)
                self.src[m] = a
                self.tgt[m] = b
        self.order = {m: i for i, m in enumerate(self.morphisms)}
        self.obj_index = {x: i for i, x in enumerate(self.objects)}
        self.comp = dict(comp)
        for m in self.morphisms:
            a, b = self.src[m], self.tgt[m]
            if b in self.ids:
                self.comp.setdefault((self.ids[b], m), m)
            if a in self.ids:
                self.comp.setdefault((m, self.ids[a]), m)

    def hom(self, a, b):
        return self.homs.get((a, b), [])

    def hom_id_first(self, a, b):
        ms = self.hom(a, b)
        if a == b and a in self.ids:
            i = self.ids[a]
            return [i] + [m for m in ms if m != i]
        return list(ms)

    def id(self, x):
        return self.ids[x]

    def compose(self, *ms):
        """``compose(h, g, f)`` is ``h o g o f``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.comp[(g, out)]
        return out

    def out_of(self, x):
        return [m for m in self.morphisms if self.src[m] == x]

    def into(self, x):
        return [m for m in self.morphisms if self.tgt[m] == x]

    def size(self):
        return len(self.morphisms)

    def same(self, other):
        return self is other or (self.objects == other.objects and self.homs == other.homs
                                 and self.ids == other.ids and self.comp == other.comp)

    def validate(self):
        """Every category law checked exhaustively; returns violation strings."""
        v = []
        for m in self.duplicates:
            v.append("duplicate morphism id %s" % m)
        for (a, b) in self.homs:
            if a not in self.obj_index or b not in self.obj_index:
                v.append("hom-set %s->%s names an unknown object" % (a, b))
        for x in self.objects:
            if x not in self.ids:
                v.append("object %s has no identity" % x)
            elif self.ids[x] not in self.src:
                v.append("dangling identity %s for %s" % (self.ids[x], x))
            elif (self.src[self.ids[x]], self.tgt[self.ids[x]]) != (x, x):
                v.append("identity %s of %s is not an endomorphism of %s" % (self.ids[x], x, x))
        for x in self.ids:
            if x not in self.obj_index:
                v.append("identity declared for unknown object %s" % x)
        if v:
            return v
        for (g, f), h in self.comp.items():
            if g not in self.src or f not in self.src:
                v.append("composite %s%s%s names an unknown morphism" % (g, COMP_SEP, f))
            elif self.src[g] != self.tgt[f]:
                v.append("composite %s%s%s defined on a non-composable pair" % (g, COMP_SEP, f))
            elif h not in self.src:
                v.append("dangling composite %s%s%s = %s" % (g, COMP_SEP, f, h))
            elif (self.src[h], self.tgt[h]) != (self.src[f], self.tgt[g]):
                v.append("composite %s%s%s = %s has the wrong type" % (g, COMP_SEP, f, h))
        if v:
            return v
        for f in self.morphisms:
            for g in self.out_of(self.tgt[f]):
                if (g, f) not in self.comp:
                    v.append("missing composite %s%s%s" % (g, COMP_SEP, f))
        if v:
            return v
        for f in self.morphisms:
            a, b = self.src[f], self.tgt[f]
            if self.comp[(self.ids[b], f)] != f or self.comp[(f, self.ids[a])] != f:
                v.append("identity law fails at %s" % f)
        for f in self.morphisms:
            for g in self.out_of(self.tgt[f]):
                gf = self.comp[(g, f)]
                for h in self.out_of(self.tgt[g]):
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        v.append("associativity fails at (%s, %s, %s)" % (h, g, f))
        return v

    def same_as(self, other):
        """Equal as presented categories, up to declaration order."""
        if self is other:
            return True
        return (set(self.objects) == set(other.objects) and self.ids == other.ids
                and {k: set(v) for k, v in self.homs.items() if v} == {k: set(v) for k, v in other.homs.items() if v}
                and self.comp == other.comp)

    def to_dict(self):
        return {
            "objects": list(self.objects),
            "homs": {"%s->%s" % ab: list(ms) for ab, ms in self.homs.items()},
            "id": {x: self.ids[x] for x in self.objects if x in self.ids},
            "comp": {"%s%s%s" % (g, COMP_SEP, f): h for (g, f), h in sorted(
                self.comp.items(), key=lambda kv: (self.order.get(kv[0][0], -1), self.order.get(kv[0][1], -1)))
                if g not in self.ids.values() and f not in self.ids.values()},
        }

    @classmethod
    def from_dict(cls, d, name=None):
        homs = {}
        for key, ms in d["homs"].items():
            if "->" not in key:
                raise ValueError("hom key %r is not of the form A->B" % key)
            a, b = key.split("->", 1)
            homs[(a, b)] = list(ms)
        comp = {}
        for key, h in d.get("comp", {}).items():
            if COMP_SEP not in key:
                raise ValueError("composite key %r lacks the %s separator" % (key, COMP_SEP))
            g, f = key.split(COMP_SEP, 1)
            comp[(g, f)] = h
        return cls(d["objects"], homs, d["id"], comp, name=name)

    def __repr__(self):
        return "FinCategory(%s, %d objects, %d morphisms)" % (
            self.name or "?", len(self.objects), len(self.morphisms))


def category_from_maps(objects, sizes, generators, name=None):
    """The subcategory of finite sets generated by some maps.

    ``sizes[x]`` is the cardinality of object ``x`` and ``generators`` maps a
    name to ``(source, target, tuple_of_images)``.  Morphisms are the closure
    of the generators and identities under composition; ids are the generator
    names for generators, ``id<X>`` for identities and ``g.f`` words otherwise.
    """
    maps = {}
    names = {}
    order = []

    def add(name, a, b, t):
        key = (a, b, t)
        if key in names:
            return False
        names[key] = name
        maps[name] = key
        order.append(name)
        return True

    for x in objects:
        add("id" + x, x, x, tuple(range(sizes[x])))
    for g, (a, b, t) in generators.items():
        add(g, a, b, tuple(t))
    frontier = list(order)
    while frontier:
        new = []
        for f in list(order):
            for g in list(order):
                a, b, tf = maps[f]
                b2, c, tg = maps[g]
                if b != b2:
                    continue
                t = tuple(tg[i] for i in tf)
                if (a, c, t) not in names:
                    nm = "%s.%s" % (g, f)
                    add(nm, a, c, t)
                    new.append(nm)
        frontier = new
    homs = {}
    for x in objects:
        for y in objects:
            ms = [m for m in order if maps[m][0] == x and maps[m][1] == y]
            if ms:
                homs[(x, y)] = ms
    comp = {}
    for f in order:
        for g in order:
            a, b, tf = maps[f]
            b2, c, tg = maps[g]
            if b == b2:
                comp[(g, f)] = names[(a, c, tuple(tg[i] for i in tf))]
    return FinCategory(objects, homs, {x: "id" + x for x in objects}, comp, name=name)


def monoid_category(elements, table, obj="*", name=None):
    """One-object category of a monoid; ``elements[0]`` is the unit and
    ``table[i][j]`` is the index of ``elements[i] * elements[j]``."""
    comp = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            comp[(a, b)] = elements[table[i][j]]
    return FinCategory([obj], {(obj, obj): list(elements)}, {obj: elements[0]}, comp, name=name)


def poset_category(elements, leq, name=None):
    """Thin category of a finite preorder; ``leq(a, b)`` gives ``a <= b``."""
    homs = {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                homs[(a, b)] = ["%s<=%s" % (a, b)]
    comp = {}
    for a in elements:
        for b in elements:
            for c in elements:
                if leq(a, b) and leq(b, c):
                    comp[("%s<=%s" % (b, c), "%s<=%s" % (a, b))] = "%s<=%s" % (a, c)
    return FinCategory(elements, homs, {a: "%s<=%s" % (a, a) for a in elements}, comp, name=name)


def dualize(X):
    """Opposite category, functor or natural transformation.

    Opposites of categories are cached so that dualizing twice returns the
    original object.
    """
    if isinstance(X, FinCategory):
        if getattr(X, "_op", None) is not None:
            return X._op
        # keep the declaration order of morphisms stable
        ordered = {}
        for m in X.morphisms:
            key = (X.tgt[m], X.src[m])
            ordered.setdefault(key, []).append(m)
        comp = {(f, g): h for (g, f), h in X.comp.items()}
        name = None
        if X.name:
            name = X.name[:-3] if X.name.endswith("^op") else X.name + "^op"
        op = FinCategory(X.objects, ordered, X.ids, comp, name=name)
        X._op = op
        op._op = X
        return op
    if isinstance(X, FinFunctor):
        return FinFunctor(dualize(X.source), dualize(X.target), X.obj_map, X.mor_map,
                          name=(X.name[:-3] if X.name and X.name.endswith("^op") else
                                (X.name + "^op" if X.name else None)))
    if isinstance(X, NatTrans):
        return NatTrans(dualize(X.G), dualize(X.F), X.components)
    raise TypeError("cannot dualize %r" % (X,))


class FinFunctor:
    """A functor between finite categories given by object and morphism maps."""

    def __init__(self, source, target, obj_map, mor_map, name=None):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def ob(self, x):
        return self.obj_map[x]

    def mor(self, f):
        return self.mor_map[f]

    def validate(self):
        C, D = self.source, self.target
        v = []
        for x in C.objects:
            if x not in self.obj_map:
                v.append("object %s is not mapped" % x)
            elif self.obj_map[x] not in D.obj_index:
                v.append("object %s maps to unknown %s" % (x, self.obj_map[x]))
        for f in C.morphisms:
            if f not in self.mor_map:
                v.append("morphism %s is not mapped" % f)
            elif self.mor_map[f] not in D.src:
                v.append("morphism %s maps to unknown %s" % (f, self.mor_map[f]))
        if v:
            return v
        for f in C.morphisms:
            Ff = self.mor_map[f]
            if (D.src[Ff], D.tgt[Ff]) != (self.obj_map[C.src[f]], self.obj_map[C.tgt[f]]):
                v.append("%s -> %s does not preserve source/target" % (f, Ff))
        for x in C.objects:
            if self.mor_map[C.ids[x]] != D.ids[self.obj_map[x]]:
                v.append("identity of %s is not preserved" % x)
        if v:
            return v
        for f in C.morphisms:
            for g in C.out_of(C.tgt[f]):
                if self.mor_map[C.comp[(g, f)]] != D.comp[(self.mor_map[g], self.mor_map[f])]:
                    v.append("composite %s%s%s is not preserved" % (g, COMP_SEP, f))
        return v

    def to_dict(self):
        return {"obj_map": {x: self.obj_map[x] for x in self.source.objects},
                "mor_map": {f: self.mor_map[f] for f in self.source.morphisms}}

    def same_as(self, other):
        return (self.obj_map == other.obj_map and self.mor_map == other.mor_map
                and self.source.same_as(other.source) and self.target.same_as(other.target))

    def __repr__(self):
        return "FinFunctor(%s)" % (self.name or "?")


def identity_functor(C):
    return FinFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms},
                      name="Id_%s" % (C.name or "C"))


def compose_functors(G, F):
    """``G o F``."""
    return FinFunctor(F.source, G.target,
                      {x: G.obj_map[F.obj_map[x]] for x in F.source.objects},
                      {f: G.mor_map[F.mor_map[f]] for f in F.source.morphisms},
                      name="%s.%s" % (G.name or "G", F.name or "F"))


class NatTrans:
    """A natural transformation ``F -> G`` between parallel functors."""

    def __init__(self, F, G, components):
        self.F = F
        self.G = G
        self.components = dict(components)

    def __getitem__(self, x):
        return self.components[x]

    def validate(self):
        C, D = self.F.source, self.F.target
        v = []
        for x in C.objects:
            a = self.components.get(x)
            if a is None:
                v.append("missing component at %s" % x)
            elif a not in D.src or (D.src[a], D.tgt[a]) != (self.F.ob(x), self.G.ob(x)):
                v.append("component at %s has the wrong type" % x)
        if v:
            return v
        for f in C.morphisms:
            a, b = C.src[f], C.tgt[f]
            if D.comp[(self.G.mor(f), self.components[a])] != D.comp[(self.components[b], self.F.mor(f))]:
                v.append("naturality fails at %s" % f)
        return v

    def is_identity(self):
        D = self.F.target
        return all(self.components[x] == D.ids[self.F.ob(x)] for x in self.F.source.objects)

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.components == other.components

    def __hash__(self):
        return hash(tuple(sorted(self.components.items())))

    def __repr__(self):
        return "NatTrans(%s)" % self.components


def identity_nat(F):
    D = F.target
    return NatTrans(F, F, {x: D.ids[F.ob(x)] for x in F.source.objects})


def vcomp(b, a):
    """Vertical composite ``b o a``."""
    D = a.F.target
    return NatTrans(a.F, b.G, {x: D.comp[(b[x], a[x])] for x in a.F.source.objects})


def whisker_left(H, a):
    """``H a`` for ``a: F -> G`` and a functor ``H`` applied after."""
    return NatTrans(compose_functors(H, a.F), compose_functors(H, a.G),
                    {x: H.mor(a[x]) for x in a.F.source.objects})


def whisker_right(a, K):
    """``a K`` for ``a: F -> G`` and a functor ``K`` applied before."""
    return NatTrans(compose_functors(a.F, K), compose_functors(a.G, K),
                    {x: a[K.ob(x)] for x in K.source.objects})


# ---------------------------------------------------------------- small CSP

def search(variables, domains, constraints, limit=None):
    """Backtracking over ``variables`` in order, trying domain values in order.

    ``constraints`` is a list of ``(vars, predicate)``; a predicate receives
    the assignment dict once all of its vars are assigned.  Yields solutions
    as dicts, lexicographically ordered.
    """
    position = {v: i for i, v in enumerate(variables)}
    by_last = {}
    for vs, pred in constraints:
        last = max(position[v] for v in vs) if vs else -1
        by_last.setdefault(last, []).append(pred)
    for pred in by_last.get(-1, []):
        if not pred({}):
            return
    assignment = {}
    count = [0]

    def rec(i):
        if i == len(variables):
            count[0] += 1
            yield dict(assignment)
            return
        v = variables[i]
        for val in domains[v]:
            assignment[v] = val
            if all(pred(assignment) for pred in by_last.get(i, [])):
                yield from rec(i + 1)
                if limit is not None and count[0] >= limit:
                    del assignment[v]
                    return
            del assignment[v]

    yield from rec(0)


def nat_transformations(F, G, extra=None, limit=None):
    """Enumerate natural transformations ``F -> G`` in lexicographic order.

    ``extra`` is a list of further ``(objects, predicate)`` constraints over
    the component assignment.
    """
    C, D = F.source, F.target
    objs = list(C.objects)
    domains = {x: D.hom_id_first(F.ob(x), G.ob(x)) for x in objs}
    cons = []
    for f in C.morphisms:
        a, b = C.src[f], C.tgt[f]

        def nat(s, f=f, a=a, b=b):
            return D.comp[(G.mor(f), s[a])] == D.comp[(s[b], F.mor(f))]
        cons.append(((a, b), nat))
    for vs, pred in (extra or []):
        cons.append((tuple(vs), pred))
    for sol in search(objs, domains, cons, limit=limit):
        yield NatTrans(F, G, sol)


def is_iso_nat(a):
    D = a.F.target
    return all(morphism_class(D, a[x], "iso")[0] for x in a.F.source.objects)


def inverse_nat(a):
    D = a.F.target
    comps = {}
    for x in a.F.source.objects:
        ok, inv = morphism_class(D, a[x], "iso")
        if not ok:
            raise ValueError("component at %s is not invertible" % x)
        comps[x] = inv
    return NatTrans(a.G, a.F, comps)


def nat_isos(F, G, limit=None):
    C, D = F.source, F.target
    extra = [((x,), (lambda s, x=x: morphism_class(D, s[x], "iso")[0])) for x in C.objects]
    return nat_transformations(F, G, extra=extra, limit=limit)


def enumerate_functors(C, D, limit=None, bound=DEFAULT_BOUND):
    """All functors ``C -> D`` in lexicographic order of their tables."""
    for X in (C, D):
        if X.size() > bound:
            raise SearchBoundExceeded("category %s has %d morphisms, bound is %d"
                                      % (X.name or "?", X.size(), bound))
    objs = list(C.objects)
    ids = set(C.ids.values())
    mors = [f for f in C.morphisms if f not in ids]
    count = [0]

    def check(mm, f):
        # composites whose three morphisms are all assigned
        for g in C.out_of(C.tgt[f]):
            if g in mm:
                h = C.comp[(g, f)]
                if h in mm and mm[h] != D.comp[(mm[g], mm[f])]:
                    return False
        for h0 in C.into(C.src[f]):
            if h0 in mm:
                h = C.comp[(f, h0)]
                if h in mm and mm[h] != D.comp[(mm[f], mm[h0])]:
                    return False
        return True

    def check_composite(mm, f):
        for (g, h0), h in C.comp.items():
            if h == f and g in mm and h0 in mm and mm[f] != D.comp[(mm[g], mm[h0])]:
                return False
        return True

    def rec_mor(i, om, mm):
        if limit is not None and count[0] >= limit:
            return
        if i == len(mors):
            count[0] += 1
            yield FinFunctor(C, D, dict(om), dict(mm))
            return
        f = mors[i]
        for k in D.hom_id_first(om[C.src[f]], om[C.tgt[f]]):
            mm[f] = k
            if check(mm, f) and check_composite(mm, f):
                yield from rec_mor(i + 1, om, mm)
            del mm[f]

    def rec_obj(i, om):
        if i == len(objs):
            mm = {C.ids[x]: D.ids[om[x]] for x in objs}
            yield from rec_mor(0, om, mm)
            return
        for y in D.objects:
            om[objs[i]] = y
            yield from rec_obj(i + 1, om)
            del om[objs[i]]

    yield from rec_obj(0, {})


def first(it):
    for x in it:
        return x
    return None


def nat_endo_monoid(C):
    """All natural transformations ``Id_C -> Id_C``."""
    I = identity_functor(C)
    return list(nat_transformations(I, I))


# ---------------------------------------------------------------- morphisms

MORPHISM_CLASSES = ("split_mono", "split_epi", "iso", "constant", "idempotent")


def morphism_class(C, f, cls):
    """Decide a property of a morphism; returns ``(verdict, witness)``.

    The witness is a retraction, section or inverse for the split classes and
    a distinguishing pair ``(g, h)`` when ``constant`` fails.
    """
    if f not in C.src:
        raise KeyError("unknown morphism %r" % (f,))
    a, b = C.src[f], C.tgt[f]
    if cls == "split_mono":
        for r in C.hom_id_first(b, a):
            if C.comp[(r, f)] == C.ids[a]:
                return True, r
        return False, None
    if cls == "split_epi":
        for s in C.hom_id_first(b, a):
            if C.comp[(f, s)] == C.ids[b]:
                return True, s
        return False, None
    if cls == "iso":
        for g in C.hom_id_first(b, a):
            if C.comp[(g, f)] == C.ids[a] and C.comp[(f, g)] == C.ids[b]:
                return True, g
        return False, None
    if cls == "constant":
        for z in C.objects:
            hs = C.hom(z, a)
            for g, h in itertools.combinations(hs, 2):
                if C.comp[(f, g)] != C.comp[(f, h)]:
                    return False, (g, h)
        return True, None
    if cls == "idempotent":
        return a == b and C.comp[(f, f)] == f, None
    raise ValueError("unknown morphism class %r" % (cls,))


FUNCTOR_PROPERTIES = ("faithful", "full", "fully_faithful", "conservative", "maschke", "dual_maschke")


def functor_property(F, prop):
    """Decide a property of ``F`` by exhaustive quantification.

    Returns ``(verdict, counterexample)``; the counterexample is a pair of
    morphisms for ``faithful``, a missed morphism for ``full`` and the
    offending morphism for the reflection properties.
    """
    C, D = F.source, F.target
    if prop == "faithful":
        for (a, b), ms in C.homs.items():
            seen = {}
            for f in ms:
                k = F.mor(f)
                if k in seen:
                    return False, (seen[k], f)
                seen[k] = f
        return True, None
    if prop == "full":
        for a in C.objects:
            for b in C.objects:
                image = {F.mor(f) for f in C.hom(a, b)}
                for k in D.hom(F.ob(a), F.ob(b)):
                    if k not in image:
                        return False, (a, b, k)
        return True, None
    if prop == "fully_faithful":
        ok, cx = functor_property(F, "faithful")
        if not ok:
            return ok, cx
        return functor_property(F, "full")
    reflect = {"conservative": "iso", "maschke": "split_mono", "dual_maschke": "split_epi"}
    if prop in reflect:
        cls = reflect[prop]
        for f in C.morphisms:
            if morphism_class(D, F.mor(f), cls)[0] and not morphism_class(C, f, cls)[0]:
                return False, f
        return True, None
    raise ValueError("unknown functor property %r" % (prop,))


def constant_generated(C):
    """Returns ``(verdict, separating_map)``; on failure the map names the
    parallel pair that no constant morphism distinguishes."""
    constants = [k for k in C.morphisms if morphism_class(C, k, "constant")[0]]
    witness = {}
    for (a, b), ms in C.homs.items():
        for f, g in itertools.combinations(ms, 2):
            found = None
            for k in constants:
                if C.tgt[k] == a and C.comp[(f, k)] != C.comp[(g, k)]:
                    found = k
                    break
            if found is None:
                return False, (f, g)
            witness[(f, g)] = found
    return True, witness


# ---------------------------------------------------------------- retractions

MODES = ("semiseparable", "separable", "naturally_full")


class HomRetraction:
    """A family ``P[X, Y]: Hom_D(FX, FY) -> Hom_C(X, Y)``."""

    def __init__(self, F, table):
        self.F = F
        self.table = {k: dict(v) for k, v in table.items()}

    def __call__(self, x, y, k):
        return self.table[(x, y)][k]

    def validate(self):
        """Binaturality checked on every triple ``(h, k, l)``."""
        F = self.F
        C, D = F.source, F.target
        v = []
        for x in C.objects:
            for y in C.objects:
                row = self.table.get((x, y), {})
                for k in D.hom(F.ob(x), F.ob(y)):
                    if k not in row:
                        v.append("P(%s,%s) undefined on %s" % (x, y, k))
                    elif row[k] not in C.hom(x, y):
                        v.append("P(%s,%s)(%s) = %s has the wrong type" % (x, y, k, row[k]))
        if v:
            return v
        for x in C.objects:
            for y in C.objects:
                for k in D.hom(F.ob(x), F.ob(y)):
                    pk = self.table[(x, y)][k]
                    for h in C.into(x):
                        x0 = C.src[h]
                        for l in C.out_of(y):
                            y1 = C.tgt[l]
                            lhs = self.table[(x0, y1)][D.compose(F.mor(l), k, F.mor(h))]
                            if lhs != C.compose(l, pk, h):
                                v.append("binaturality fails at (%s, %s, %s)" % (h, k, l))
        return v

    def satisfies(self, mode):
        F = self.F
        C, D = F.source, F.target
        for x in C.objects:
            for y in C.objects:
                if mode == "naturally_full":
                    for k in D.hom(F.ob(x), F.ob(y)):
                        if F.mor(self.table[(x, y)][k]) != k:
                            return False
                    continue
                for f in C.hom(x, y):
                    p = self.table[(x, y)][F.mor(f)]
                    if mode == "separable" and p != f:
                        return False
                    if mode == "semiseparable" and F.mor(p) != F.mor(f):
                        return False
        return True

    def to_dict(self):
        return {"%s->%s" % xy: dict(row) for xy, row in self.table.items()}

    def __eq__(self, other):
        return isinstance(other, HomRetraction) and self.table == other.table


def _check_bound(F, bound):
    for C in (F.source, F.target):
        if C.size() > bound:
            raise SearchBoundExceeded("category %s has %d morphisms, bound is %d"
                                      % (C.name or "?", C.size(), bound))


def _retraction_variables(F):
    C, D = F.source, F.target
    out = []
    for x in C.objects:
        for y in C.objects:
            for k in D.hom(F.ob(x), F.ob(y)):
                out.append((x, y, k))
    return out


def _mode_domain(F, x, y, k, mode):
    C = F.source
    cands = C.hom_id_first(x, y)
    pre = [f for f in cands if F.mor(f) == k]
    if mode == "naturally_full":
        return pre
    if mode == "semiseparable":
        return pre if pre else cands
    if mode == "separable":
        if not pre:
            return cands
        return pre if len(pre) == 1 else []
    if mode is None:
        return cands
    raise ValueError("unknown mode %r" % (mode,))


def find_retraction(F, mode="semiseparable", bound=DEFAULT_BOUND, relative=None):
    """Least binatural family ``P`` satisfying ``mode``, or ``None``.

    With ``relative=H`` the family maps into ``Hom(HX, HY)`` and must satisfy
    ``P(Ff) = Hf`` (relative separability); ``mode`` is then ignored.
    """
    _check_bound(F, bound)
    C, D = F.source, F.target
    H = relative
    if H is not None:
        _check_bound(H, bound)
        E = H.target
    variables = _retraction_variables(F)
    domains = {}
    for (x, y, k) in variables:
        if H is None:
            dom = _mode_domain(F, x, y, k, mode)
        else:
            forced = {H.mor(f) for f in C.hom(x, y) if F.mor(f) == k}
            if len(forced) > 1:
                dom = []
            elif forced:
                dom = list(forced)
            else:
                dom = E.hom_id_first(H.ob(x), H.ob(y))
        if not dom:
            return None
        domains[(x, y, k)] = dom
    allowed = {v: set(d) for v, d in domains.items()}
    if H is None:
        lift, comp_t = (lambda m: m), C
    else:
        lift, comp_t = H.mor, E

    def propagate(assign, var, val):
        stack = [(var, val)]
        while stack:
            (x, y, k), p = stack.pop()
            cur = assign.get((x, y, k))
            if cur is not None:
                if cur != p:
                    return False
                continue
            if p not in allowed[(x, y, k)]:
                return False
            assign[(x, y, k)] = p
            for l in C.out_of(y):
                y1 = C.tgt[l]
                stack.append(((x, y1, D.comp[(F.mor(l), k)]), comp_t.comp[(lift(l), p)]))
            for h in C.into(x):
                x0 = C.src[h]
                stack.append(((x0, y, D.comp[(k, F.mor(h))]), comp_t.comp[(p, lift(h))]))
        return True

    def rec(i, assign):
        while i < len(variables) and variables[i] in assign:
            i += 1
        if i == len(variables):
            return assign
        var = variables[i]
        for val in domains[var]:
            trial = dict(assign)
            if propagate(trial, var, val):
                res = rec(i + 1, trial)
                if res is not None:
                    return res
        return None

    sol = rec(0, {})
    if sol is None:
        return None
    table = {}
    for (x, y, k), p in sol.items():
        table.setdefault((x, y), {})[k] = p
    for x in C.objects:
        for y in C.objects:
            table.setdefault((x, y), {})
    if H is None:
        P = HomRetraction(F, table)
        assert not P.validate() and P.satisfies(mode)
        return P
    return RelativeRetraction(F, H, table)


def decide_retraction(F, mode="semiseparable", bound=DEFAULT_BOUND):
    """``(verdict, witness)`` for the existence of a retraction in ``mode``."""
    P = find_retraction(F, mode, bound)
    return P is not None, P


def blind_retractions(F, mode, bound=DEFAULT_BOUND, max_product=2_000_000):
    """Every binatural family satisfying ``mode``, by plain enumeration.

    This is the slow oracle for :func:`find_retraction`: no propagation, the
    full product of hom-sets, each candidate checked against the definition.
    """
    _check_bound(F, bound)
    C, D = F.source, F.target
    variables = _retraction_variables(F)
    choices = [C.hom_id_first(x, y) for (x, y, k) in variables]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_product:
        raise SearchBoundExceeded("blind enumeration needs %d candidates" % total)
    found = []
    for combo in itertools.product(*choices):
        table = {}
        for (x, y, k), p in zip(variables, combo):
            table.setdefault((x, y), {})[k] = p
        ok = True
        for (x, y, k), p in zip(variables, combo):
            for x0 in C.objects:
                for h in C.hom(x0, x):
                    for y1 in C.objects:
                        for l in C.hom(y, y1):
                            kk = D.comp[(F.mor(l), D.comp[(k, F.mor(h))])]
                            if table[(x0, y1)][kk] != C.comp[(l, C.comp[(p, h)])]:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        for x in C.objects:
            for y in C.objects:
                table.setdefault((x, y), {})
                for f in C.hom(x, y):
                    p = table[(x, y)][F.mor(f)]
                    if mode == "separable" and p != f:
                        ok = False
                    if mode == "semiseparable" and F.mor(p) != F.mor(f):
                        ok = False
                if mode == "naturally_full":
                    for k in D.hom(F.ob(x), F.ob(y)):
                        if F.mor(table[(x, y)][k]) != k:
                            ok = False
        if ok:
            found.append(HomRetraction(F, table))
    return found


class RelativeRetraction:
    """``P[X, Y]: Hom_D(FX, FY) -> Hom_E(HX, HY)`` with ``P(Ff) = Hf``."""

    def __init__(self, F, H, table):
        self.F = F
        self.H = H
        self.table = table

    def validate(self):
        F, H = self.F, self.H
        C, D, E = F.source, F.target, H.target
        v = []
        for x in C.objects:
            for y in C.objects:
                for k in D.hom(F.ob(x), F.ob(y)):
                    pk = self.table[(x, y)][k]
                    for h in C.into(x):
                        for l in C.out_of(y):
                            lhs = self.table[(C.src[h], C.tgt[l])][D.compose(F.mor(l), k, F.mor(h))]
                            if lhs != E.compose(H.mor(l), pk, H.mor(h)):
                                v.append("binaturality fails at (%s, %s, %s)" % (h, k, l))
                for f in C.hom(x, y):
                    if self.table[(x, y)][F.mor(f)] != H.mor(f):
                        v.append("P(F%s) != H%s" % (f, f))
        return v


def relative_separable(F, H, bound=DEFAULT_BOUND):
    """Is ``F`` ``H``-separable?  Returns ``(verdict, witness)``."""
    if F.source is not H.source and F.source.to_dict() != H.source.to_dict():
        raise ValueError("F and H must share their source category")
    P = find_retraction(F, bound=bound, relative=H)
    if P is not None:
        assert not P.validate()
    return P is not None, P


# ---------------------------------------------------------------- idempotents

class IdempotentNat:
    """An idempotent natural endotransformation of the identity functor."""

    def __init__(self, category, components):
        self.category = category
        self.components = dict(components)

    def __getitem__(self, x):
        return self.components[x]

    def validate(self):
        C = self.category
        v = []
        for x in C.objects:
            e = self.components.get(x)
            if e not in C.hom(x, x):
                v.append("component at %s is not an endomorphism" % x)
            elif C.comp[(e, e)] != e:
                v.append("component at %s is not idempotent" % x)
        if v:
            return v
        for f in C.morphisms:
            a, b = C.src[f], C.tgt[f]
            if C.comp[(f, self.components[a])] != C.comp[(self.components[b], f)]:
                v.append("naturality fails at %s" % f)
        return v

    def is_identity(self):
        C = self.category
        return all(self.components[x] == C.ids[x] for x in C.objects)

    def as_nat(self):
        I = identity_functor(self.category)
        return NatTrans(I, I, self.components)

    def __eq__(self, other):
        return isinstance(other, IdempotentNat) and self.components == other.components

    def __repr__(self):
        return "IdempotentNat(%s)" % self.components


def _fixes(F, e):
    D = F.target
    return all(F.mor(e[x]) == D.ids[F.ob(x)] for x in F.source.objects)


def associated_idempotent(F, P):
    """``e[X] = P[X, X](id_FX)``, certified against its defining properties.

    Checks idempotency, naturality, ``Fe = Id``, the identification property
    ``Ff = Fg <=> e o f = e o g`` and uniqueness among all natural
    idempotents with ``Fe = Id``.
    """
    C, D = F.source, F.target
    if P.validate() or not P.satisfies("semiseparable"):
        raise ValueError("P does not witness semiseparability")
    e = IdempotentNat(C, {x: P(x, x, D.ids[F.ob(x)]) for x in C.objects})
    problems = e.validate()
    if not _fixes(F, e):
        problems.append("Fe != Id")
    for (a, b), ms in C.homs.items():
        for f in ms:
            for g in ms:
                same_image = F.mor(f) == F.mor(g)
                same_class = C.comp[(e[b], f)] == C.comp[(e[b], g)]
                if same_image != same_class:
                    problems.append("identification property fails at (%s, %s)" % (f, g))
    for other in qualifying_idempotents(F):
        if other.components != e.components:
            problems.append("second idempotent %s with Fe = Id" % other.components)
    if problems:
        raise AssertionError("; ".join(problems))
    return e


def qualifying_idempotents(F):
    """All natural idempotents ``e`` with ``Fe = Id_F`` that also satisfy the
    identification property; for a semiseparable ``F`` there is exactly one."""
    C = F.source
    out = []
    for a in nat_endo_monoid(C):
        e = IdempotentNat(C, a.components)
        if e.validate() or not _fixes(F, e):
            continue
        ok = True
        for (x, y), ms in C.homs.items():
            for f in ms:
                for g in ms:
                    if (F.mor(f) == F.mor(g)) != (C.comp[(e[y], f)] == C.comp[(e[y], g)]):
                        ok = False
        if ok:
            out.append(e)
    return out


def retract_transfer(H, F, phi, psi, bound=DEFAULT_BOUND):
    """Transfer semiseparability from ``H`` to its retract ``F``.

    ``phi: F -> H`` and ``psi: H -> F`` with ``phi o psi = Id_H``.  Returns
    ``(status, witness)`` with status ``"holds"``, ``"fails"`` (``H`` not
    semiseparable) or ``"not_applicable"`` (``Fe != Id_F``).  The witness for
    ``F`` is ``P^H o P^{F,H}`` where ``P^{F,H}(g) = phi_Y o g o psi_X``.
    """
    C, D = F.source, F.target
    if not vcomp(phi, psi).is_identity():
        raise ValueError("phi o psi is not the identity of H")
    ok, PH = decide_retraction(H, "semiseparable", bound)
    if not ok:
        return "fails", None
    e = associated_idempotent(H, PH)
    if not _fixes(F, e):
        return "not_applicable", e
    table = {}
    for x in C.objects:
        for y in C.objects:
            row = {}
            for g in D.hom(F.ob(x), F.ob(y)):
                hg = D.compose(phi[y], g, psi[x])
                row[g] = PH(x, y, hg)
            table[(x, y)] = row
    P = HomRetraction(F, table)
    if P.validate() or not P.satisfies("semiseparable"):
        raise AssertionError("transferred family is not a semiseparability witness")
    return "holds", P
