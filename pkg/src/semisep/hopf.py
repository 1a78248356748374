"""Right antipodes of finite-dimensional bialgebras and the verdict for the
coinvariant functor, plus builders for the named examples."""
from .algstruct import (
    Bialgebra, CoalgebraMap, FDAlgebra, FDCoalgebra, grouplike_coalgebra, monoid_algebra, tensor_algebra,
)
from .linalg import QQ, LinearSystem, enumerate_affine, kron, kron_vec, matvec

HOLDS, FAILS, INDETERMINATE = "holds", "fails", "indeterminate"

# exhaustive scans over a finite field stop at this many candidates
SCAN_LIMIT = 100000


class AntipodeCandidate:
    def __init__(self, B, S):
        self.B = B
        self.S = tuple(tuple(B.field(x) for x in r) for r in S)
        if len(self.S) != B.dim or any(len(r) != B.dim for r in self.S):
            raise ValueError("dimension mismatch")

    def __call__(self, v):
        return matvec(self.S, v)

    def to_dict(self):
        s = self.B.field.serialize
        return {"S": [[s(x) for x in r] for r in self.S]}


class HopfVerdict:
    def __init__(self):
        self.right_antipode_exists = FAILS
        self.anti_mult = FAILS
        self.anti_comult = FAILS
        self.coinvariant_semiseparable = FAILS
        self.antipode = None
        self.solution_dim = None
        self.infeasibility = None
        self.scanned = None

    def to_dict(self):
        d = {"right_antipode_exists": self.right_antipode_exists, "anti_mult": self.anti_mult,
             "anti_comult": self.anti_comult, "coinvariant_semiseparable": self.coinvariant_semiseparable,
             "antipode": self.antipode.to_dict()["S"] if self.antipode else None,
             "solution_dim": self.solution_dim}
        if self.infeasibility is not None:
            d["infeasibility"] = self.infeasibility
        if self.scanned is not None:
            d["scanned"] = self.scanned
        return d


def verify_antipode_properties(B, S):
    """``(right_antipode, anti_mult, anti_comult)`` for the linear map ``S``."""
    if not isinstance(S, AntipodeCandidate):
        S = AntipodeCandidate(B, S)
    A, C = B.algebra, B.coalgebra
    F, n = B.field, B.dim
    right = True
    for i in range(n):
        acc = [F.zero] * n
        d = C.delta[i]
        for a in range(n):
            for b in range(n):
                if d[a * n + b]:
                    t = A.mul(A.e(a), S(A.e(b)))
                    acc = [u + d[a * n + b] * w for u, w in zip(acc, t)]
        if tuple(acc) != tuple(C.eps[i] * u for u in A.unit):
            right = False
            break
    mult = all(S(A.mul(A.e(i), A.e(j))) == A.mul(S(A.e(j)), S(A.e(i)))
               for i in range(n) for j in range(n))
    # Delta S = (S (x) S) tau Delta
    SS = kron(S.S, S.S)
    comult = True
    for i in range(n):
        d = C.delta[i]
        flipped = tuple(d[b * n + a] for a in range(n) for b in range(n))
        if C.comul(S(A.e(i))) != matvec(SS, flipped):
            comult = False
            break
    return right, mult, comult


def right_antipode_system(B):
    """The affine system ``sum b_1 S(b_2) = eps(b) 1`` in the entries of ``S``."""
    A, C = B.algebra, B.coalgebra
    F, n = B.field, B.dim
    sy = LinearSystem(F)
    for k in range(n):
        for b in range(n):
            sy.var((k, b))
    for i in range(n):
        d = C.delta[i]
        rows = [[] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                x = d[a * n + b]
                if not x:
                    continue
                for k in range(n):
                    prod = A.mul(A.e(a), A.e(k))
                    for r in range(n):
                        if prod[r]:
                            rows[r].append(((k, b), x * prod[r]))
        for r in range(n):
            sy.add(rows[r], C.eps[i] * A.unit[r])
    return sy


def _matrix_from(sy, vec, n):
    return tuple(tuple(vec[sy.index[(k, b)]] for b in range(n)) for k in range(n))


def find_right_antipode(B, scan_limit=SCAN_LIMIT):
    """``(status, S, info)``.

    The right antipode identity is linear and solved exactly; the two
    anti-(co)multiplicativity laws are checked on the canonical solution.  If
    they fail on a positive-dimensional solution set the set is scanned over
    a finite field, and over Q the status is ``indeterminate``.
    """
    n = B.dim
    sy = right_antipode_system(B)
    sol = sy.solve()
    info = {"solution_dim": len(sol.kernel) if sol.feasible else None}
    if not sol.feasible:
        info["infeasibility"] = sol.certificate()
        return FAILS, None, info
    S = _matrix_from(sy, sol.particular, n)
    if all(verify_antipode_properties(B, S)):
        return HOLDS, S, info
    if not sol.kernel:
        return FAILS, S, info
    if B.field.finite and B.field.p ** len(sol.kernel) <= scan_limit:
        count = 0
        for point in enumerate_affine(sol, scan_limit):
            count += 1
            T = _matrix_from(sy, point, n)
            if all(verify_antipode_properties(B, T)):
                info["scanned"] = count
                return HOLDS, T, info
        info["scanned"] = count
        return FAILS, S, info
    return INDETERMINATE, S, info


def coinvariant_verdict(B, scan_limit=SCAN_LIMIT):
    problems = B.validate()
    if problems:
        raise ValueError("invalid bialgebra: " + "; ".join(problems))
    v = HopfVerdict()
    status, S, info = find_right_antipode(B, scan_limit)
    v.solution_dim = info["solution_dim"]
    v.infeasibility = info.get("infeasibility")
    v.scanned = info.get("scanned")
    if S is None:
        return v
    v.antipode = AntipodeCandidate(B, S)
    right, mult, comult = verify_antipode_properties(B, S)
    if not right:
        raise AssertionError("solver returned a map that is not a right antipode")
    v.right_antipode_exists = HOLDS
    v.anti_mult = HOLDS if mult else (INDETERMINATE if status == INDETERMINATE else FAILS)
    v.anti_comult = HOLDS if comult else (INDETERMINATE if status == INDETERMINATE else FAILS)
    if status == HOLDS and not (mult and comult):
        raise AssertionError("antipode marked as found but not fully verified")
    v.coinvariant_semiseparable = status
    return v


# ---------------------------------------------------------------- named examples

def _check_table(table):
    n = len(table)
    if any(len(r) != n or any(not 0 <= x < n for x in r) for r in table):
        raise ValueError("table must be square with entries in range")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError("table is not associative at (%d,%d,%d)" % (a, b, c))
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        raise ValueError("element 0 is not a unit")


def monoid_bialgebra(elements, table, field=QQ, name=None):
    """``k M`` with every monoid element grouplike."""
    _check_table(table)
    A = monoid_algebra(elements, table, field, name=name)
    C = grouplike_coalgebra(list(elements), field)
    B = Bialgebra(A, C, name=name or "k%s" % "{%s}" % ",".join(elements))
    problems = B.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return B


def group_algebra(elements, table, field=QQ, name=None):
    _check_table(table)
    n = len(table)
    for a in range(n):
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)):
            raise ValueError("element %s has no inverse" % elements[a])
    return monoid_bialgebra(elements, table, field, name)


def cyclic_group(n, field=QQ):
    elements = ["g%d" % i for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_algebra(elements, table, field, name="kC%d" % n)


def group_inverse(B):
    """The inverse map of a group algebra as a matrix."""
    A = B.algebra
    n = B.dim
    S = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if A.mul(A.e(a), A.e(b)) == A.unit:
                S[b][a] = 1
    return tuple(tuple(B.field(x) for x in r) for r in S)


# H4 on 1, g, x, gx; the basis element g^a x^b has index a + 2b
def _h4_index(a, b):
    return a + 2 * b


def sweedler_h4(field=QQ):
    """``k<g, x | g^2 = 1, x^2 = 0, gx = -xg>`` with ``g`` grouplike and
    ``Delta(x) = x (x) 1 + g (x) x``."""
    words = [(0, 0), (1, 0), (0, 1), (1, 1)]
    mult = []
    for (a, b) in words:
        row = []
        for (c, d) in words:
            v = [0] * 4
            if b + d < 2:
                # x^b g^c = (-1)^(bc) g^c x^b
                v[_h4_index((a + c) % 2, b + d)] = (-1) ** (b * c)
            row.append(v)
        mult.append(row)
    A = FDAlgebra(field, ["1", "g", "x", "gx"], mult, [1, 0, 0, 0], name="H4")
    AA = tensor_algebra(A, A)
    one, g, x = A.e(0), A.e(1), A.e(2)
    d1 = kron_vec(one, one)
    dg = kron_vec(g, g)
    dx = tuple(p + q for p, q in zip(kron_vec(x, one), kron_vec(g, x)))
    dgx = AA.mul(dg, dx)
    C = FDCoalgebra(field, A.basis, [d1, dg, dx, dgx], [1, 1, 0, 0], name="H4")
    B = Bialgebra(A, C, name="H4")
    problems = B.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return B


def h4_antipode(field=QQ):
    """``S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x``."""
    cols = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)]
    return tuple(tuple(field(cols[j][i]) for j in range(4)) for i in range(4))


def h4_coalgebra_map(k, field=QQ):
    """``f_k: H4 -> k{1, g}`` fixing ``1, g`` with ``f_k(x) = k(1 - g)`` and
    ``f_k(gx) = -k(1 - g)`` (so that ``f_k(xg) = k(1 - g)``)."""
    H = sweedler_h4(field)
    D = grouplike_coalgebra(["1", "g"], field)
    cols = [(1, 0), (0, 1), (k, -k), (-k, k)]
    M = tuple(tuple(field(cols[j][i]) for j in range(4)) for i in range(2))
    return CoalgebraMap(H.coalgebra, D, M, name="f_%s" % k)


def build_named(kind, field=QQ, **params):
    """``group_algebra``/``monoid_bialgebra`` take ``elements`` and ``table``;
    ``grouplike_coalgebra`` takes ``labels``."""
    if kind == "group_algebra":
        return group_algebra(params["elements"], params["table"], field)
    if kind == "monoid_bialgebra":
        return monoid_bialgebra(params["elements"], params["table"], field)
    if kind == "sweedler_h4":
        return sweedler_h4(field)
    if kind == "grouplike_coalgebra":
        labels = list(params["labels"])
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        C = grouplike_coalgebra(labels, field)
        problems = C.validate()
        if problems:
            raise AssertionError("; ".join(problems))
        return C
    raise ValueError("unknown kind %r" % kind)


def is_grouplike(C, v):
    v = tuple(C.field(x) for x in v)
    return C.comul(v) == kron_vec(v, v) and C.counit(v) == C.field.one


def grouplike_verify(C, candidates):
    return [tuple(v) for v in candidates if is_grouplike(C, v)]


def coalgebra_map_verify(f, C, D):
    """Comultiplicativity and counitality of the matrix ``f: C -> D``."""
    return not CoalgebraMap(C, D, f).validate()
