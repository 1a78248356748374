"""Reading structure files: schema checks with JSON-pointer locations,
path references between files, and the field override."""
import json
import os
import re

import jsonschema

from .adjunction import AdjointTriple, make_adjunction
from .algstruct import AlgebraMap, Bialgebra, Bimodule, CoalgebraMap, Coring, FDAlgebra, FDCoalgebra
from .fincat import FinCategory, FinFunctor
from .linalg import Field
from .schemas import schema


class InputError(Exception):
    """Bad input; ``pointer`` is a JSON pointer into ``source``."""

    def __init__(self, message, source=None, pointer=""):
        self.message = message
        self.source = source
        self.pointer = pointer
        where = "%s#%s" % (source or "<input>", pointer) if pointer or source else ""
        super().__init__("%s: %s" % (where, message) if where else message)

    def to_dict(self):
        return {"message": self.message, "source": self.source, "pointer": self.pointer}


class StructureError(InputError):
    """Well-formed input whose structure violates a law."""


def _escape(part):
    return str(part).replace("~", "~0").replace("/", "~1")


def pointer(path):
    return "".join("/" + _escape(p) for p in path)


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError("file not found", path)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s (line %d)" % (e.msg, e.lineno), path)


def check(doc, kind, source=None, prefix="", top=True):
    validator = jsonschema.Draft202012Validator(schema(kind, top))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = jsonschema.exceptions.best_match(errors)
        raise InputError(e.message, source, prefix + pointer(e.absolute_path))


class Loader:
    """Resolves documents and the references inside them.

    A reference is either an inline object or a path relative to the file
    that contains it.  ``field`` overrides the field tag of algebraic files.
    """

    def __init__(self, field=None):
        self.field = field

    def _resolve(self, ref, kind, base, source, ptr):
        if isinstance(ref, str):
            path = os.path.normpath(os.path.join(base, ref))
            doc = read_json(path)
            check(doc, kind, path)
            return doc, os.path.dirname(path), path, ""
        check(ref, kind, source, ptr, top=False)
        return ref, base, source, ptr

    def load(self, kind, path):
        return getattr(self, "_" + kind)(path, ".", None, "")

    def load_inline(self, kind, doc):
        return getattr(self, "_" + kind)(doc, ".", "<report>", "")

    def _wrap(self, fn, source, ptr):
        try:
            return fn()
        except InputError:
            raise
        except (KeyError, ValueError, TypeError, IndexError, ZeroDivisionError) as e:
            raise InputError("%s: %s" % (type(e).__name__, e), source, ptr)

    # -- finite categories
    def _category(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "category", base, source, ptr)

        def build():
            C = FinCategory.from_dict(d, name=d.get("name"))
            problems = C.validate()
            if problems:
                raise StructureError("invalid category: " + "; ".join(problems[:5]), source, ptr)
            return C
        return self._wrap(build, source, ptr)

    def _functor(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "functor", base, source, ptr)
        C = self._category(d["source"], base, source, ptr + "/source")
        D = self._category(d["target"], base, source, ptr + "/target")
        F = FinFunctor(C, D, d["obj_map"], d["mor_map"], name=d.get("name"))
        problems = F.validate()
        if problems:
            raise StructureError("invalid functor: " + "; ".join(problems[:5]), source,
                                 ptr + _functor_problem_pointer(problems[0]))
        return F

    def _adjunction(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "adjunction", base, source, ptr)
        F = self._functor(d["F"], base, source, ptr + "/F")
        G = self._functor(d["G"], base, source, ptr + "/G")
        adj = self._wrap(lambda: make_adjunction(F, G, d["eta"], d["eps"], name=d.get("name")), source, ptr)
        problems = adj.validate()
        if problems:
            raise StructureError("invalid adjunction: " + "; ".join(problems[:5]), source, ptr)
        return adj

    def _triple(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "triple", base, source, ptr)
        left = self._adjunction(d["left"], base, source, ptr + "/left")
        right = self._adjunction(d["right"], base, source, ptr + "/right")
        if not left.G.same_as(right.F):
            raise StructureError("the two adjunctions do not share the middle functor", source, ptr)
        return AdjointTriple(left, right, name=d.get("name"))

    # -- algebraic structures
    def _field_of(self, d, source, ptr):
        if self.field is not None:
            return self.field
        try:
            return Field.parse(d.get("field", "Q"))
        except ValueError as e:
            raise InputError(str(e), source, ptr + "/field")

    def _checked(self, obj, source, ptr, what):
        problems = self._wrap(obj.validate, source, ptr)
        if problems:
            raise StructureError("invalid %s: %s" % (what, "; ".join(problems[:5])), source, ptr)
        return obj

    def _dims(self, d, source, ptr, keys):
        n = d["dim"]
        for key, shape in keys:
            arr = d[key]
            if not _has_shape(arr, shape(n)):
                raise InputError("%s must have shape %s" % (key, "x".join(map(str, shape(n)))),
                                 source, ptr + "/" + key)

    def _algebra(self, ref, base, source, ptr, field=None):
        d, base, source, ptr = self._resolve(ref, "algebra", base, source, ptr)
        self._dims(d, source, ptr, [("mult", lambda n: (n, n, n)), ("unit", lambda n: (n,))])
        F = field or self._field_of(d, source, ptr)
        A = self._wrap(lambda: FDAlgebra(F, d.get("basis") or ["b%d" % i for i in range(d["dim"])],
                                         d["mult"], d["unit"], name=d.get("name")), source, ptr)
        return self._checked(A, source, ptr, "algebra")

    def _algebra_map(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "algebra_map", base, source, ptr)
        R = self._algebra(d["source"], base, source, ptr + "/source")
        S = self._algebra(d["target"], base, source, ptr + "/target", field=R.field)
        if not _has_shape(d["matrix"], (S.dim, R.dim)):
            raise InputError("matrix must be %dx%d" % (S.dim, R.dim), source, ptr + "/matrix")
        phi = self._wrap(lambda: AlgebraMap(R, S, d["matrix"], name=d.get("name")), source, ptr)
        return self._checked(phi, source, ptr, "algebra map")

    def _coalgebra(self, ref, base, source, ptr, field=None):
        d, base, source, ptr = self._resolve(ref, "coalgebra", base, source, ptr)
        self._dims(d, source, ptr, [("delta", lambda n: (n, n * n)), ("eps", lambda n: (n,))])
        F = field or self._field_of(d, source, ptr)
        C = self._wrap(lambda: FDCoalgebra(F, d.get("basis") or ["c%d" % i for i in range(d["dim"])],
                                           d["delta"], d["eps"], name=d.get("name")), source, ptr)
        return self._checked(C, source, ptr, "coalgebra")

    def _coalgebra_map(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "coalgebra_map", base, source, ptr)
        C = self._coalgebra(d["source"], base, source, ptr + "/source")
        D = self._coalgebra(d["target"], base, source, ptr + "/target", field=C.field)
        if not _has_shape(d["matrix"], (D.dim, C.dim)):
            raise InputError("matrix must be %dx%d" % (D.dim, C.dim), source, ptr + "/matrix")
        psi = self._wrap(lambda: CoalgebraMap(C, D, d["matrix"], name=d.get("name")), source, ptr)
        return self._checked(psi, source, ptr, "coalgebra map")

    def _bimodule(self, ref, base, source, ptr, field=None):
        d, base, source, ptr = self._resolve(ref, "bimodule", base, source, ptr)
        R = self._algebra(d["left_algebra"], base, source, ptr + "/left_algebra", field=field)
        S = self._algebra(d["right_algebra"], base, source, ptr + "/right_algebra", field=R.field)
        n = d["dim"]
        if not _has_shape(d["left"], (R.dim, n, n)):
            raise InputError("left must hold %d matrices of size %dx%d" % (R.dim, n, n), source, ptr + "/left")
        if not _has_shape(d["right"], (S.dim, n, n)):
            raise InputError("right must hold %d matrices of size %dx%d" % (S.dim, n, n), source, ptr + "/right")
        M = self._wrap(lambda: Bimodule(R, S, n, d["left"], d["right"], name=d.get("name")), source, ptr)
        return self._checked(M, source, ptr, "bimodule")

    def _coring(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "coring", base, source, ptr)
        C = self._bimodule(d["bimodule"], base, source, ptr + "/bimodule")
        n = C.dim
        if not _has_shape(d["delta"], (n * n, n)):
            raise InputError("delta must be %dx%d" % (n * n, n), source, ptr + "/delta")
        if not _has_shape(d["eps"], (C.R.dim, n)):
            raise InputError("eps must be %dx%d" % (C.R.dim, n), source, ptr + "/eps")
        Cr = self._wrap(lambda: Coring(C, d["delta"], d["eps"], name=d.get("name")), source, ptr)
        return self._checked(Cr, source, ptr, "coring")

    def _bialgebra(self, ref, base, source, ptr):
        d, base, source, ptr = self._resolve(ref, "bialgebra", base, source, ptr)
        A = self._algebra(d["algebra"], base, source, ptr + "/algebra")
        C = self._coalgebra(d["coalgebra"], base, source, ptr + "/coalgebra", field=A.field)
        if A.dim != C.dim:
            raise InputError("algebra and coalgebra dimensions differ", source, ptr)
        return self._checked(Bialgebra(A, C, name=d.get("name")), source, ptr, "bialgebra")


def _has_shape(arr, shape):
    if not shape:
        return not isinstance(arr, list)
    if not isinstance(arr, list) or len(arr) != shape[0]:
        return False
    return all(_has_shape(a, shape[1:]) for a in arr)


# ---------------------------------------------------------------- canonical forms

def category_doc(C):
    d = C.to_dict()
    if C.name:
        d["name"] = C.name
    return d


def functor_doc(F):
    d = {"source": category_doc(F.source), "target": category_doc(F.target)}
    d.update(F.to_dict())
    return d


def adjunction_doc(adj):
    d = {"F": functor_doc(adj.F), "G": functor_doc(adj.G)}
    d.update(adj.to_dict())
    return d


def _functor_problem_pointer(problem):
    """The table entry a functor violation refers to, when it names one."""
    m = re.match(r"(object|morphism) (\S+) (maps to unknown|is not mapped)", problem)
    if m:
        table = "/obj_map" if m.group(1) == "object" else "/mor_map"
        return table if m.group(3) == "is not mapped" else table + "/" + _escape(m.group(2))
    m = re.match(r"(\S+) -> \S+ does not preserve", problem)
    if m:
        return "/mor_map/" + _escape(m.group(1))
    return ""


def with_header(kind, d):
    out = {"schema_version": 1, "kind": kind}
    out.update(d)
    return out
