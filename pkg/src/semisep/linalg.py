"""Exact linear algebra over the rationals and prime fields.

Vectors are tuples and matrices are tuples of row tuples.  Every routine
takes the field explicitly so that empty shapes stay well defined.
"""
from dataclasses import dataclass
from fractions import Fraction
import itertools


class ModP:
    """A residue modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero residue")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """The rationals (``p is None``) or the prime field of order ``p``."""

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise ValueError("%r is not prime" % (p,))
        self.p = p

    @property
    def tag(self):
        return "Q" if self.p is None else "Fp:%d" % self.p

    @classmethod
    def parse(cls, tag):
        if tag == "Q":
            return QQ
        if isinstance(tag, str) and tag.startswith("Fp:"):
            try:
                p = int(tag[3:])
            except ValueError:
                raise ValueError("bad field tag %r" % (tag,))
            return cls(p)
        raise ValueError("bad field tag %r" % (tag,))

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, ModP):
                raise ValueError("residue given where a rational was expected")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("residue of the wrong prime")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ValueError("denominator vanishes mod %d" % self.p)
        return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def finite(self):
        return self.p is not None

    def elements(self):
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return [ModP(i, self.p) for i in range(self.p)]

    def serialize(self, x):
        """Rationals become ints or "p/q" strings, residues become ints."""
        if self.p is not None:
            return self(x).v
        x = Fraction(x)
        if x.denominator == 1:
            return x.numerator
        return "%d/%d" % (x.numerator, x.denominator)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%s)" % self.tag


QQ = Field()


def GF(p):
    return Field(p)


# ---------------------------------------------------------------- vectors

def vec(field, xs):
    return tuple(field(x) for x in xs)


def mat(field, rows):
    return tuple(tuple(field(x) for x in row) for row in rows)


def zeros(field, n):
    return (field.zero,) * n


def unit_vector(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))


def identity(field, n):
    return tuple(unit_vector(field, n, i) for i in range(n))


def zero_matrix(field, rows, cols):
    return tuple((field.zero,) * cols for _ in range(rows))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero(v):
    return not any(v)


def dot(u, v):
    # start from a zero of the entries' type so empty sums stay in the field
    s = u[0] * 0 if u else 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def transpose(A, ncols=None):
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matvec(A, v):
    return tuple(dot(row, v) for row in A)


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def kron(A, B):
    """Kronecker product; row (i,k) and column (j,l) use the flat index i*dim+k."""
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


def kron_vec(u, v):
    out = []
    for a in u:
        if a:
            out.extend(a * b if b else b for b in v)
        else:
            out.extend(a for _ in v)
    return tuple(out)


def combination(field, coeffs, vectors, n):
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] = out[i] + c * a
    return tuple(out)


# ---------------------------------------------------------------- elimination

def rref(A, field, ncols=None):
    """Reduced row echelon form with leftmost-pivot choice.

    Returns ``(rows, pivots)``: the nonzero rows of the echelon form and the
    pivot column of each row.
    """
    rows = [[field(x) for x in r] for r in A if any(r)]
    if not rows:
        return (), ()
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        nz = [j for j in range(c, n) if pr[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(x) for x in rows[:r]), tuple(pivots)


def rank(A, field):
    return len(rref(A, field)[1])


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solutions of ``A x = b``: ``particular + span(kernel)``.

    ``particular`` is ``None`` when the system is infeasible; the ranks of
    ``A`` and ``[A|b]`` are kept as the infeasibility certificate.
    """

    field: Field
    nvars: int
    particular: tuple
    kernel: tuple
    rank_A: int
    rank_Ab: int

    @property
    def feasible(self):
        return self.particular is not None

    @property
    def dim(self):
        return len(self.kernel) if self.feasible else -1

    def point(self, coeffs):
        """The solution ``particular + sum coeffs[i] * kernel[i]``."""
        out = list(self.particular)
        for c, k in zip(coeffs, self.kernel):
            if c:
                for i, a in enumerate(k):
                    if a:
                        out[i] = out[i] + c * a
        return tuple(out)

    def certificate(self):
        return {"rank_A": self.rank_A, "rank_Ab": self.rank_Ab,
                "nvars": self.nvars, "kernel_dim": len(self.kernel)}


def _nullspace_from_rref(R, pivots, n, field):
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def solve_affine(A, b, field=QQ, ncols=None):
    """All solutions of ``A x = b`` over ``field``.

    The particular solution sets every free variable to zero and each kernel
    vector has a single 1 among the free coordinates, which makes both
    canonical for the solution space.
    """
    A = tuple(tuple(r) for r in A)
    b = tuple(b)
    if len(A) != len(b):
        raise ValueError("dimension mismatch: %d rows, %d right-hand sides" % (len(A), len(b)))
    if ncols is None:
        if not A:
            raise ValueError("cannot infer the number of unknowns of an empty system")
        ncols = len(A[0])
    for r in A:
        if len(r) != ncols:
            raise ValueError("dimension mismatch: ragged matrix")
    aug = [r + (field(c),) for r, c in zip(A, b)]
    R, piv = rref(aug, field)
    rank_Ab = len(piv)
    if piv and piv[-1] == ncols:
        rank_A = rank_Ab - 1
        return AffineSolutionSet(field, ncols, None, (), rank_A, rank_Ab)
    rank_A = rank_Ab
    x = [field.zero] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    kernel = _nullspace_from_rref([r[:ncols] for r in R], piv, ncols, field)
    return AffineSolutionSet(field, ncols, tuple(x), kernel, rank_A, rank_Ab)


def kernel_and_image(A, field=QQ, ncols=None):
    """Kernel basis, image basis (echelon rows of the column space) and rank."""
    A = tuple(tuple(r) for r in A)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, piv = rref(A, field)
    kernel = _nullspace_from_rref(R, piv, ncols, field)
    image, _ = rref(transpose(A, ncols), field)
    return kernel, image, len(piv)


def span_basis(vectors, field):
    return rref(vectors, field)[0]


def in_span(v, basis, field):
    if is_zero(v):
        return True
    return rank(tuple(basis) + (tuple(v),), field) == rank(basis, field)


def coordinates(v, basis, field):
    """Coefficients expressing ``v`` in ``basis`` or ``None`` if impossible."""
    if not basis:
        return () if is_zero(v) else None
    sol = solve_affine(transpose(basis), v, field, ncols=len(basis))
    return sol.particular


class Quotient:
    """The quotient ``U / W`` with canonical echelon coset representatives.

    ``project`` maps a vector of ``U`` to coordinates in the quotient and
    ``section`` maps coordinates back to the chosen representative.
    """

    def __init__(self, field, n, sub_basis, ambient_basis=None):
        self.field = field
        self.n = n
        W, wpiv = rref(sub_basis, field)
        self.sub = W
        self.sub_pivots = wpiv
        if ambient_basis is None:
            ambient_basis = identity(field, n)
        reduced = [self._reduce(u) for u in ambient_basis]
        reps, rpiv = rref(reduced, field)
        self.reps = reps
        self.rep_pivots = rpiv
        self.dim = len(reps)
        self._projection = None
        self.section_matrix = transpose(reps, n) if reps else tuple(() for _ in range(n))

    @property
    def projection(self):
        """Matrix of ``project``: reduce modulo W then read the pivot coordinates."""
        if self._projection is None:
            n = self.n
            cols = [self.project(unit_vector(self.field, n, i)) for i in range(n)]
            self._projection = transpose(tuple(cols), self.dim) if cols else tuple(() for _ in range(self.dim))
        return self._projection

    def _reduce(self, v):
        v = list(v)
        for row, p in zip(self.sub, self.sub_pivots):
            c = v[p]
            if c:
                for j, a in enumerate(row):
                    if a:
                        v[j] = v[j] - c * a
        return tuple(v)

    def project(self, v):
        r = self._reduce(v)
        return tuple(r[p] for p in self.rep_pivots)

    def section(self, coords):
        return combination(self.field, coords, self.reps, self.n)

    def contains_sub(self, v):
        return is_zero(self._reduce(v))


def subspace_ops(U, W, kind, field=QQ, n=None):
    """Intersection, sum or quotient of two subspaces given by spanning lists.

    For ``kind == "quotient"`` a :class:`Quotient` of ``span(U)`` by
    ``span(W)`` is returned; ``W`` must lie inside ``U``.
    """
    U = tuple(tuple(u) for u in U)
    W = tuple(tuple(w) for w in W)
    if n is None:
        n = len((U + W)[0]) if (U or W) else 0
    for v in U + W:
        if len(v) != n:
            raise ValueError("dimension mismatch")
    if kind == "sum":
        return span_basis(U + W, field)
    if kind == "intersection":
        Ub = span_basis(U, field)
        Wb = span_basis(W, field)
        if not Ub or not Wb:
            return ()
        # a.U = b.W  <=>  [U^T | -W^T] (a,b) = 0
        M = tuple(tuple(Ub[i][r] for i in range(len(Ub))) + tuple(-Wb[j][r] for j in range(len(Wb)))
                  for r in range(n))
        ker, _, _ = kernel_and_image(M, field, ncols=len(Ub) + len(Wb))
        vs = [combination(field, k[:len(Ub)], Ub, n) for k in ker]
        return span_basis(vs, field)
    if kind == "quotient":
        Ub = span_basis(U, field)
        for w in W:
            if not in_span(w, Ub, field):
                raise ValueError("quotient needs the second subspace inside the first")
        return Quotient(field, n, W, Ub)
    raise ValueError("unknown subspace operation %r" % (kind,))


# ---------------------------------------------------------------- systems

class LinearSystem:
    """Accumulates sparse linear equations over named unknowns."""

    def __init__(self, field=QQ):
        self.field = field
        self.index = {}
        self.names = []
        self.rows = []
        self.rhs = []

    def var(self, key):
        if key not in self.index:
            self.index[key] = len(self.names)
            self.names.append(key)
        return self.index[key]

    def vars(self, keys):
        return [self.var(k) for k in keys]

    def add(self, coeffs, rhs=0):
        """Add ``sum coeffs[key] * key == rhs``; coefficients may repeat keys."""
        row = {}
        for key, c in coeffs:
            if c:
                i = self.var(key)
                row[i] = row.get(i, 0) + c
        row = {i: c for i, c in row.items() if c}
        rhs = self.field(rhs)
        if not row and not rhs:
            return
        self.rows.append(row)
        self.rhs.append(rhs)

    def solve(self):
        n = len(self.names)
        F = self.field
        dense = tuple(tuple(F(r.get(i, 0)) for i in range(n)) for r in self.rows)
        if not dense:
            return AffineSolutionSet(F, n, zeros(F, n),
                                     tuple(unit_vector(F, n, i) for i in range(n)), 0, 0)
        return solve_affine(dense, self.rhs, F, ncols=n)

    def value(self, solution, key):
        if key not in self.index:
            return self.field.zero
        return solution[self.index[key]]


def enumerate_affine(sol, limit=None):
    """Every point of a feasible affine solution set over a finite field."""
    F = sol.field
    if not F.finite:
        raise ValueError("enumeration needs a finite field")
    count = F.p ** len(sol.kernel)
    if limit is not None and count > limit:
        raise ValueError("solution set has %d points, above the limit %d" % (count, limit))
    for coeffs in itertools.product(F.elements(), repeat=len(sol.kernel)):
        yield sol.point(coeffs)


def to_field(field, A):
    """Reduce a rational matrix into ``field``."""
    return tuple(tuple(field(x) for x in row) for row in A)
