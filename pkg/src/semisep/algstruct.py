"""Finite-dimensional algebras, bimodules, coalgebras, corings and bialgebras
given by structure constants over an exact field.

Vectors are tuples of field elements.  Matrices act on column vectors, so a
left action ``r . m`` is ``L[r] @ m`` and a right action ``m . s`` is
``rho[s] @ m``.  Tensor products of spaces of dimensions ``n`` and ``w`` use
the flat index ``i * w + j``.
"""
from .linalg import (
    QQ, Field, Quotient, add, combination, coordinates, identity, is_zero, kernel_and_image,
    kron, kron_vec, matmul, matvec, scale, solve_affine, span_basis, sub, transpose,
    unit_vector, zeros,
)


def _mat_combination(field, coeffs, mats, rows, cols):
    out = [[field.zero] * cols for _ in range(rows)]
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i in range(rows):
            for j in range(cols):
                if M[i][j]:
                    out[i][j] = out[i][j] + c * M[i][j]
    return tuple(tuple(r) for r in out)


def _mat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _flatten(M):
    return tuple(x for row in M for x in row)


def _unflatten(v, rows, cols):
    return tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows))


def solve_intertwiners(pairs, n_src, n_tgt, field):
    """Basis of matrices ``X`` (``n_tgt x n_src``) with ``X A = B X`` for each
    ``(A, B)`` in ``pairs``."""
    nv = n_src * n_tgt

    def idx(i, j):
        return i * n_src + j
    rows = []
    for A, B in pairs:
        # (X A)_{ij} - (B X)_{ij} = sum_k X_ik A_kj - sum_k B_ik X_kj
        for i in range(n_tgt):
            for j in range(n_src):
                row = [field.zero] * nv
                for k in range(n_src):
                    if A[k][j]:
                        row[idx(i, k)] = row[idx(i, k)] + A[k][j]
                for k in range(n_tgt):
                    if B[i][k]:
                        row[idx(k, j)] = row[idx(k, j)] - B[i][k]
                if any(row):
                    rows.append(tuple(row))
    if not rows:
        basis = [unit_vector(field, nv, i) for i in range(nv)]
    else:
        basis, _, _ = kernel_and_image(rows, field, ncols=nv)
    return [_unflatten(b, n_tgt, n_src) for b in basis]


class FDAlgebra:
    """``b_i b_j = sum_k mult[i][j][k] b_k`` with unit vector ``unit``."""

    def __init__(self, field, basis, mult, unit, name=None):
        self.field = field
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.mult = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in mult)
        self.unit = tuple(field(c) for c in unit)
        self.name = name
        self._lm = None
        self._rm = None

    def mul(self, u, v):
        F, n = self.field, self.dim
        out = [F.zero] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def e(self, i):
        return unit_vector(self.field, self.dim, i)

    def element(self, coeffs):
        return tuple(self.field(c) for c in coeffs)

    @property
    def one(self):
        return self.unit

    @property
    def left_mult(self):
        """Matrices of ``v |-> b_i v``."""
        if self._lm is None:
            self._lm = [transpose(tuple(self.mult[i][j] for j in range(self.dim)), self.dim)
                        for i in range(self.dim)]
        return self._lm

    @property
    def right_mult(self):
        """Matrices of ``v |-> v b_j``."""
        if self._rm is None:
            self._rm = [transpose(tuple(self.mult[i][j] for i in range(self.dim)), self.dim)
                        for j in range(self.dim)]
        return self._rm

    def lmat(self, u):
        return _mat_combination(self.field, u, self.left_mult, self.dim, self.dim)

    def rmat(self, u):
        return _mat_combination(self.field, u, self.right_mult, self.dim, self.dim)

    def validate(self):
        v = []
        n = self.dim
        if len(self.unit) != n or len(self.mult) != n:
            return ["dimension mismatch"]
        for i in range(n):
            if len(self.mult[i]) != n or any(len(c) != n for c in self.mult[i]):
                return ["dimension mismatch in row %d" % i]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a = self.mul(self.mul(self.e(i), self.e(j)), self.e(k))
                    b = self.mul(self.e(i), self.mul(self.e(j), self.e(k)))
                    if a != b:
                        v.append("associativity fails at (%d,%d,%d)" % (i, j, k))
        for i in range(n):
            if self.mul(self.unit, self.e(i)) != self.e(i):
                v.append("left unit law fails at %d" % i)
            if self.mul(self.e(i), self.unit) != self.e(i):
                v.append("right unit law fails at %d" % i)
        return v

    def is_commutative(self):
        return all(self.mul(self.e(i), self.e(j)) == self.mul(self.e(j), self.e(i))
                   for i in range(self.dim) for j in range(self.dim))

    def center(self):
        """Basis of ``{z : b_i z = z b_i}``."""
        F, n = self.field, self.dim
        rows = []
        for i in range(n):
            D = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.left_mult[i], self.right_mult[i])]
            rows.extend(tuple(r) for r in D if any(r))
        if not rows:
            return [self.e(i) for i in range(n)]
        return list(kernel_and_image(rows, F, ncols=n)[0])

    def to_dict(self):
        s = self.field.serialize
        return {"field": self.field.tag, "dim": self.dim, "basis": list(self.basis),
                "mult": [[[s(c) for c in v] for v in row] for row in self.mult],
                "unit": [s(c) for c in self.unit]}

    @classmethod
    def from_dict(cls, d, field=None):
        F = field or Field.parse(d.get("field", "Q"))
        basis = d.get("basis") or ["b%d" % i for i in range(d["dim"])]
        return cls(F, basis, d["mult"], d["unit"], name=d.get("name"))

    def __repr__(self):
        return "FDAlgebra(%s, dim=%d)" % (self.name or "?", self.dim)


def algebra_from_matrices(field, mats, name=None):
    """The algebra spanned by linearly independent square matrices closed
    under products and containing the identity."""
    n = len(mats[0])
    flat = [_flatten(M) for M in mats]
    d = len(mats)
    mult = []
    for A in mats:
        row = []
        for B in mats:
            c = coordinates(_flatten(matmul(A, B)), flat, field)
            if c is None:
                raise ValueError("matrices not closed under multiplication")
            row.append(c)
        mult.append(row)
    unit = coordinates(_flatten(identity(field, n)), flat, field)
    if unit is None:
        raise ValueError("identity not in the span")
    return FDAlgebra(field, ["m%d" % i for i in range(d)], mult, unit, name=name)


def subalgebra(A, vectors):
    """Structure constants of the span of ``vectors`` (closed under products)
    in its echelon basis; returns ``(mult, basis)``."""
    F = A.field
    basis = span_basis(vectors, F)
    mult = []
    for u in basis:
        row = []
        for v in basis:
            c = coordinates(A.mul(u, v), basis, F)
            if c is None:
                raise ValueError("span not closed under multiplication")
            row.append(c)
        mult.append(row)
    return mult, basis


def corner_algebra(A, z, name=None):
    """``Az`` for a central idempotent ``z``, with unit ``z``."""
    F = A.field
    vs = [A.mul(A.e(i), z) for i in range(A.dim)]
    mult, basis = subalgebra(A, vs)
    unit = coordinates(z, basis, F)
    return FDAlgebra(F, ["c%d" % i for i in range(len(basis))], mult, unit, name=name), basis


def image_algebra(phi, name=None):
    """``phi(R)`` inside the target algebra; returns ``(algebra, basis)``."""
    S = phi.target
    vs = [phi(phi.source.e(i)) for i in range(phi.source.dim)]
    mult, basis = subalgebra(S, vs)
    unit = coordinates(S.unit, basis, S.field)
    return FDAlgebra(S.field, ["i%d" % i for i in range(len(basis))], mult, unit, name=name), basis


class AlgebraMap:
    """Unital algebra morphism given by the matrix of images of basis vectors."""

    def __init__(self, source, target, matrix, name=None):
        self.source = source
        self.target = target
        F = target.field
        self.matrix = tuple(tuple(F(x) for x in row) for row in matrix)
        self.name = name

    def __call__(self, v):
        return matvec(self.matrix, v)

    def validate(self):
        R, S = self.source, self.target
        if len(self.matrix) != S.dim or any(len(r) != R.dim for r in self.matrix):
            return ["dimension mismatch"]
        v = []
        if self(R.unit) != S.unit:
            v.append("map is not unital")
        for i in range(R.dim):
            for j in range(R.dim):
                if self(R.mul(R.e(i), R.e(j))) != S.mul(self(R.e(i)), self(R.e(j))):
                    v.append("not multiplicative at (%d,%d)" % (i, j))
        return v

    def to_dict(self):
        s = self.target.field.serialize
        return {"source": self.source.to_dict(), "target": self.target.to_dict(),
                "matrix": [[s(x) for x in row] for row in self.matrix]}

    @classmethod
    def from_dict(cls, d, field=None):
        R = FDAlgebra.from_dict(d["source"], field)
        S = FDAlgebra.from_dict(d["target"], field or R.field)
        return cls(R, S, d["matrix"], name=d.get("name"))


def compose_maps(psi, phi):
    """``psi o phi``."""
    return AlgebraMap(phi.source, psi.target, matmul(psi.matrix, phi.matrix))


# ---------------------------------------------------------------- algebras

def ground(field=QQ):
    return FDAlgebra(field, ["1"], [[[1]]], [1], name="k")


def product_algebra(n=2, field=QQ):
    """``k^n`` with componentwise product."""
    mult = [[[1 if (i == j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return FDAlgebra(field, ["e%d" % i for i in range(n)], mult, [1] * n, name="k^%d" % n)


def truncated_poly(n=2, field=QQ):
    """``k[x]/(x^n)`` on ``1, x, ..., x^(n-1)``."""
    mult = [[[1 if (i + j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return FDAlgebra(field, ["x^%d" % i for i in range(n)], mult, [1] + [0] * (n - 1),
                     name="k[x]/(x^%d)" % n)


def dual_numbers(field=QQ):
    return truncated_poly(2, field)


def matrix_algebra(n=2, field=QQ):
    """``M_n(k)`` on matrix units ``E_ab`` with index ``a*n + b``."""
    d = n * n
    mult = []
    for i in range(d):
        a, b = divmod(i, n)
        row = []
        for j in range(d):
            c, e = divmod(j, n)
            v = [0] * d
            if b == c:
                v[a * n + e] = 1
            row.append(v)
        mult.append(row)
    unit = [1 if divmod(i, n)[0] == divmod(i, n)[1] else 0 for i in range(d)]
    return FDAlgebra(field, ["E%d%d" % divmod(i, n) for i in range(d)], mult, unit, name="M%d" % n)


def upper_triangular(field=QQ):
    """Upper triangular 2x2 matrices on ``E00, E01, E11``."""
    mats = [((1, 0), (0, 0)), ((0, 1), (0, 0)), ((0, 0), (0, 1))]
    A = algebra_from_matrices(field, [tuple(tuple(field(x) for x in r) for r in M) for M in mats],
                              name="T2")
    A.basis = ["E00", "E01", "E11"]
    return A


def monoid_algebra(elements, table, field=QQ, name=None):
    """``k M`` for a finite monoid given by its table (element 0 is the unit)."""
    n = len(elements)
    mult = [[[1 if table[i][j] == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return FDAlgebra(field, list(elements), mult, [1] + [0] * (n - 1), name=name)


def tensor_algebra(A, B):
    F = A.field
    n, m = A.dim, B.dim
    mult = []
    for i in range(n * m):
        a, b = divmod(i, m)
        row = []
        for j in range(n * m):
            c, d = divmod(j, m)
            row.append(kron_vec(A.mult[a][c], B.mult[b][d]))
        mult.append(row)
    return FDAlgebra(F, ["%s*%s" % (x, y) for x in A.basis for y in B.basis], mult,
                     kron_vec(A.unit, B.unit))


def projection_map(R, i=0):
    """``k^n -> k`` onto coordinate ``i``."""
    k = ground(R.field)
    return AlgebraMap(R, k, [[1 if j == i else 0 for j in range(R.dim)]], name="proj%d" % i)


def unit_map(S):
    """``k -> S``."""
    return AlgebraMap(ground(S.field), S, [[c] for c in S.unit], name="unit")


def augmentation(S):
    """``k[x]/(x^n) -> k``, ``x |-> 0``."""
    return AlgebraMap(S, ground(S.field), [[1] + [0] * (S.dim - 1)], name="aug")


def identity_map(S):
    return AlgebraMap(S, S, identity(S.field, S.dim), name="id")


# ---------------------------------------------------------------- bimodules

class Bimodule:
    """``(R, S)``-bimodule; ``left[i]`` acts by ``R.e(i)``, ``right[j]`` by ``S.e(j)``."""

    def __init__(self, R, S, dim, left, right, name=None):
        F = R.field
        self.R = R
        self.S = S
        self.field = F
        self.dim = dim
        self.left = [tuple(tuple(F(x) for x in row) for row in M) for M in left]
        self.right = [tuple(tuple(F(x) for x in row) for row in M) for M in right]
        self.name = name

    def lmat(self, r):
        return _mat_combination(self.field, r, self.left, self.dim, self.dim)

    def rmat(self, s):
        return _mat_combination(self.field, s, self.right, self.dim, self.dim)

    def act_left(self, r, m):
        return matvec(self.lmat(r), m)

    def act_right(self, m, s):
        return matvec(self.rmat(s), m)

    def e(self, i):
        return unit_vector(self.field, self.dim, i)

    def validate(self):
        R, S, n = self.R, self.S, self.dim
        if len(self.left) != R.dim or len(self.right) != S.dim:
            return ["wrong number of action matrices"]
        for M in self.left + self.right:
            if len(M) != n or any(len(r) != n for r in M):
                return ["action matrix of the wrong size"]
        v = []
        I = identity(self.field, n)
        if not _mat_eq(self.lmat(R.unit), I):
            v.append("left unit law fails")
        if not _mat_eq(self.rmat(S.unit), I):
            v.append("right unit law fails")
        for i in range(R.dim):
            for j in range(R.dim):
                if not _mat_eq(matmul(self.left[i], self.left[j]), self.lmat(R.mul(R.e(i), R.e(j)))):
                    v.append("left action not associative at (%d,%d)" % (i, j))
        for i in range(S.dim):
            for j in range(S.dim):
                # (m s_i) s_j = m (s_i s_j)
                if not _mat_eq(matmul(self.right[j], self.right[i]), self.rmat(S.mul(S.e(i), S.e(j)))):
                    v.append("right action not associative at (%d,%d)" % (i, j))
        for i in range(R.dim):
            for j in range(S.dim):
                if not _mat_eq(matmul(self.left[i], self.right[j]), matmul(self.right[j], self.left[i])):
                    v.append("actions do not commute at (%d,%d)" % (i, j))
        return v

    def to_dict(self):
        s = self.field.serialize
        return {"left_algebra": self.R.to_dict(), "right_algebra": self.S.to_dict(), "dim": self.dim,
                "left": [[[s(x) for x in r] for r in M] for M in self.left],
                "right": [[[s(x) for x in r] for r in M] for M in self.right]}

    @classmethod
    def from_dict(cls, d, field=None):
        R = FDAlgebra.from_dict(d["left_algebra"], field)
        S = FDAlgebra.from_dict(d["right_algebra"], field or R.field)
        return cls(R, S, d["dim"], d["left"], d["right"], name=d.get("name"))

    def __repr__(self):
        return "Bimodule(%s, dim=%d)" % (self.name or "?", self.dim)


def regular_bimodule(R):
    return Bimodule(R, R, R.dim, R.left_mult, R.right_mult, name="%s as bimodule" % R.name)


def bimodule_of_map(phi, side="both"):
    """``S`` as an ``R``-bimodule through ``phi: R -> S``; ``side="right"``
    gives ``_R S_S`` and ``side="left"`` gives ``_S S_R``."""
    R, S = phi.source, phi.target
    left = [S.lmat(phi(R.e(i))) for i in range(R.dim)]
    right = [S.rmat(phi(R.e(i))) for i in range(R.dim)]
    if side == "both":
        return Bimodule(R, R, S.dim, left, right)
    if side == "right":
        return Bimodule(R, S, S.dim, left, S.right_mult)
    if side == "left":
        return Bimodule(S, R, S.dim, S.left_mult, right)
    raise ValueError(side)


def restrict(M, phi_left=None, phi_right=None):
    """Restriction of scalars along ``phi_left: A -> R`` and ``phi_right: B -> S``."""
    left, A = M.left, M.R
    right, B = M.right, M.S
    if phi_left is not None:
        A = phi_left.source
        left = [M.lmat(phi_left(A.e(i))) for i in range(A.dim)]
    if phi_right is not None:
        B = phi_right.source
        right = [M.rmat(phi_right(B.e(i))) for i in range(B.dim)]
    return Bimodule(A, B, M.dim, left, right)


def free_bimodule(n, field=QQ):
    """``k^n`` over ``(k, k)``."""
    k = ground(field)
    I = identity(field, n)
    return Bimodule(k, k, n, [I], [I], name="k^%d" % n)


def direct_sum(M, N):
    F = M.field
    n, m = M.dim, N.dim

    def blk(A, B):
        top = [tuple(A[i]) + (F.zero,) * m for i in range(n)]
        bot = [(F.zero,) * n + tuple(B[i]) for i in range(m)]
        return tuple(top + bot)
    return Bimodule(M.R, M.S, n + m, [blk(a, b) for a, b in zip(M.left, N.left)],
                    [blk(a, b) for a, b in zip(M.right, N.right)])


def outer_bimodule(R, S, P, Q):
    """``P (x)_k Q`` for a left ``R``-module ``P`` and a right ``S``-module ``Q``
    given as lists of action matrices."""
    F = R.field
    p, q = len(P[0]), len(Q[0])
    return Bimodule(R, S, p * q, [kron(A, identity(F, q)) for A in P],
                    [kron(identity(F, p), B) for B in Q])


def change_basis(M, T):
    """The isomorphic bimodule ``T M T^-1`` for an invertible ``T``."""
    F = M.field
    n = M.dim
    cols = []
    for i in range(n):
        c = solve_affine(T, unit_vector(F, n, i), F, ncols=n)
        if not c.feasible:
            raise ValueError("matrix not invertible")
        cols.append(c.particular)
    Tinv = transpose(tuple(cols), n)

    def conj(A):
        return matmul(matmul(T, A), Tinv)
    return Bimodule(M.R, M.S, n, [conj(A) for A in M.left], [conj(A) for A in M.right], name=M.name)


class TensorProduct:
    """``M (x)_R N`` as a quotient of the field tensor product."""

    def __init__(self, M, N):
        if M.S is not N.R and (M.S.dim != N.R.dim or M.S.mult != N.R.mult):
            raise ValueError("middle algebras do not match")
        F = M.field
        self.M, self.N = M, N
        self.field = F
        m, n = M.dim, N.dim
        self.flat_dim = m * n
        rels = []
        for k in range(M.S.dim):
            for i in range(m):
                mr = matvec(M.right[k], M.e(i))
                for j in range(n):
                    rn = matvec(N.left[k], N.e(j))
                    r = sub(kron_vec(mr, N.e(j)), kron_vec(M.e(i), rn))
                    if not is_zero(r):
                        rels.append(r)
        self.relations = span_basis(rels, F) if rels else ()
        self.quotient = Quotient(F, m * n, self.relations)
        self.dim = self.quotient.dim
        self._bimodule = None

    @property
    def bimodule(self):
        if self._bimodule is None:
            M, N = self.M, self.N
            left = [self._induced_blocks(A, None) for A in M.left]
            right = [self._induced_blocks(None, B) for B in N.right]
            self._bimodule = Bimodule(M.R, N.S, self.dim, left, right)
        return self._bimodule

    def _induced_blocks(self, A, B):
        """Induced matrix of ``A (x) 1`` or ``1 (x) B`` applied blockwise."""
        F, m, n = self.field, self.M.dim, self.N.dim
        cols = []
        for i in range(self.dim):
            s = self.section(unit_vector(F, self.dim, i))
            out = [F.zero] * (m * n)
            for idx, x in enumerate(s):
                if not x:
                    continue
                a, b = divmod(idx, n)
                if A is not None:
                    for r in range(m):
                        if A[r][a]:
                            out[r * n + b] += A[r][a] * x
                else:
                    for r in range(n):
                        if B[r][b]:
                            out[a * n + r] += B[r][b] * x
            cols.append(self.project(out))
        return transpose(tuple(cols), self.dim) if cols else ()

    def project(self, flat):
        return self.quotient.project(flat)

    def section(self, coords):
        return self.quotient.section(coords)

    def pure(self, u, v):
        return self.project(kron_vec(u, v))

    def induced(self, A):
        """Matrix on the quotient of a flat map that preserves the relations."""
        cols = [self.project(matvec(A, self.section(unit_vector(self.field, self.dim, i))))
                for i in range(self.dim)]
        return transpose(tuple(cols), self.dim) if cols else ()

    def projection_matrix(self):
        return self.quotient.projection


def balanced_tensor(M, N):
    T = TensorProduct(M, N)
    problems = T.bimodule.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return T


def bimodule_map_space(M, N):
    """Basis of ``_R Hom_S(M, N)`` as ``N.dim x M.dim`` matrices."""
    if M.R.dim != N.R.dim or M.S.dim != N.S.dim:
        raise ValueError("algebras do not match")
    pairs = list(zip(M.left, N.left)) + list(zip(M.right, N.right))
    return solve_intertwiners(pairs, M.dim, N.dim, M.field)


def invariants(M):
    """Basis of ``{m : r m = m r}`` via the stacked commutator kernel."""
    if M.R.dim != M.S.dim:
        raise ValueError("invariants need an (R, R)-bimodule")
    F, n = M.field, M.dim
    rows = []
    for A, B in zip(M.left, M.right):
        rows.extend(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    rows = [r for r in rows if any(r)]
    if not rows:
        return [M.e(i) for i in range(n)]
    return list(kernel_and_image(rows, F, ncols=n)[0])


def invariants_by_intersection(M):
    """The same space as an intersection of per-generator kernels."""
    from .linalg import subspace_ops
    F, n = M.field, M.dim
    cur = [M.e(i) for i in range(n)]
    for A, B in zip(M.left, M.right):
        D = [tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)]
        D = [r for r in D if any(r)]
        if not D:
            continue
        ker = kernel_and_image(D, F, ncols=n)[0]
        cur = subspace_ops(cur, ker, "intersection", F, n) if cur and ker else ()
    return list(span_basis(cur, F)) if cur else []


class DualModule:
    """``M* = Hom_S(M, S)`` as an ``(S, R)``-bimodule with ``(s f r)(m) = s f(r m)``.

    With ``side="left"`` this is ``Hom_R(M, R)`` instead, an ``(S, R)``-bimodule
    through ``(s f r)(m) = f(m s) r``.  ``maps`` holds the basis functionals
    as matrices with one column per basis vector of ``M``.
    """

    def __init__(self, M, side="right"):
        F = M.field
        self.M = M
        self.side = side
        # the algebra the functionals land in
        self.S = S = M.S if side == "right" else M.R
        if side == "right":
            self.maps = solve_intertwiners(list(zip(M.right, S.right_mult)), M.dim, S.dim, F)
        else:
            self.maps = solve_intertwiners(list(zip(M.left, S.left_mult)), M.dim, S.dim, F)
        self.flat = [_flatten(f) for f in self.maps]
        d = len(self.maps)
        self.dim = d
        if side == "right":
            left = [self._matrix(lambda f, i=i: matmul(S.left_mult[i], f)) for i in range(S.dim)]
            right = [self._matrix(lambda f, i=i: matmul(f, M.left[i])) for i in range(M.R.dim)]
            self.bimodule = Bimodule(S, M.R, d, left, right, name="dual")
        else:
            # (s f r)(m) = f(m s) r
            left = [self._matrix(lambda f, i=i: matmul(f, M.right[i])) for i in range(M.S.dim)]
            right = [self._matrix(lambda f, i=i: matmul(S.right_mult[i], f)) for i in range(S.dim)]
            self.bimodule = Bimodule(M.S, S, d, left, right, name="left dual")

    def coords(self, f):
        c = coordinates(_flatten(f), self.flat, self.M.field)
        if c is None:
            raise ValueError("not an S-linear functional")
        return c

    def functional(self, coeffs):
        M = self.M
        return _mat_combination(M.field, coeffs, self.maps, self.S.dim, M.dim)

    def _matrix(self, op):
        cols = [self.coords(op(f)) for f in self.maps]
        return transpose(tuple(cols), self.dim) if cols else ()

    def evaluate(self, coeffs, m):
        return matvec(self.functional(coeffs), m)


def dual_module(M, side="right"):
    """``Hom_S(M, S)`` for ``side="right"``, ``Hom_R(M, R)`` for ``side="left"``."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    D = DualModule(M, side)
    problems = D.bimodule.validate()
    if problems:
        raise AssertionError("; ".join(problems))
    return D


def is_central_idempotent(A, z):
    if A.mul(z, z) != tuple(z):
        return False
    return all(A.mul(A.e(i), z) == A.mul(z, A.e(i)) for i in range(A.dim))


def center_and_idempotent(A, z=None):
    """Center basis and, for a given ``z``, the verdict that ``z`` is a central
    idempotent together with the check that left multiplication by ``z`` is an
    idempotent endomorphism of the regular module commuting with all others."""
    C = A.center()
    out = {"center": C}
    if z is not None:
        z = tuple(A.field(c) for c in z)
        verdict = is_central_idempotent(A, z)
        Z = A.lmat(z)
        endo = (_mat_eq(matmul(Z, Z), Z)
                and all(_mat_eq(matmul(Z, R), matmul(R, Z)) for R in A.right_mult)
                and all(_mat_eq(matmul(Z, L), matmul(L, Z)) for L in A.left_mult))
        if verdict != endo:
            raise AssertionError("central idempotent and endomorphism views disagree")
        out["central_idempotent"] = verdict
    return out


def central_idempotents(A, limit=100000):
    """All central idempotents by enumeration of the center over a prime field."""
    from .linalg import enumerate_affine, AffineSolutionSet
    F = A.field
    if not F.finite:
        raise ValueError("enumeration needs a finite field")
    C = A.center()
    sol = AffineSolutionSet(F, A.dim, zeros(F, A.dim), tuple(C), 0, 0)
    return [z for z in enumerate_affine(sol, limit) if A.mul(z, z) == z]


def trace_ideal_and_fgp(M):
    """Trace ideal of ``M_S``, generator and fgp verdicts, and a dual basis.

    The dual basis uses the field basis of ``M`` as generators ``e_i`` and
    solves ``sum_i e_i f_i(m) = m`` for the functionals ``f_i``.
    """
    F, S = M.field, M.S
    D = dual_module(M)
    vals = [matvec(f, M.e(i)) for f in D.maps for i in range(M.dim)]
    trace = list(span_basis(vals, F)) if vals else []
    generator = len(trace) == S.dim
    n, d = M.dim, D.dim
    # unknowns c[i][a]: f_i = sum_a c[i][a] maps[a]
    A, b = [], []
    for j in range(n):
        m = M.e(j)
        target = m
        cols = []
        for i in range(n):
            for a in range(d):
                cols.append(matvec(M.rmat(matvec(D.maps[a], m)), M.e(i)))
        for row in range(n):
            A.append(tuple(col[row] for col in cols))
            b.append(target[row])
    if n * d == 0:
        fgp = n == 0
        dual_basis = [] if fgp else None
    else:
        sol = solve_affine(A, b, F, ncols=n * d)
        fgp = sol.feasible
        dual_basis = None
        if fgp:
            dual_basis = [(M.e(i), tuple(sol.particular[i * d:(i + 1) * d])) for i in range(n)]
    return {"trace_ideal": trace, "generator": generator, "fgp": fgp,
            "dual_basis": dual_basis, "dual": D}


def dual_basis_solutions(M, D=None):
    """The affine solution set of dual-basis coefficients (``e_i`` the field basis)."""
    F = M.field
    D = D or dual_module(M)
    n, d = M.dim, D.dim
    A, b = [], []
    for j in range(n):
        m = M.e(j)
        cols = [matvec(M.rmat(matvec(D.maps[a], m)), M.e(i)) for i in range(n) for a in range(d)]
        for row in range(n):
            A.append(tuple(col[row] for col in cols))
            b.append(m[row])
    return solve_affine(A, b, F, ncols=n * d)


# ---------------------------------------------------------------- coalgebras

class FDCoalgebra:
    """``delta[i]`` is the flat vector of ``Delta(b_i)``; ``eps[i] = eps(b_i)``."""

    def __init__(self, field, basis, delta, eps, name=None):
        self.field = field
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.delta = tuple(tuple(field(x) for x in v) for v in delta)
        self.eps = tuple(field(x) for x in eps)
        self.name = name

    def e(self, i):
        return unit_vector(self.field, self.dim, i)

    def comul(self, v):
        return combination(self.field, v, self.delta, self.dim * self.dim)

    @property
    def delta_matrix(self):
        return transpose(self.delta, self.dim * self.dim)

    def counit(self, v):
        return sum((a * b for a, b in zip(self.eps, v)), self.field.zero)

    def _apply_left(self, A, w, n_out):
        """``(A (x) id)`` on a flat tensor where ``A`` is given column-wise."""
        n = self.dim
        out = [self.field.zero] * (n_out * n)
        for i in range(n):
            for j in range(n):
                c = w[i * n + j]
                if c:
                    col = A(i)
                    for k, a in enumerate(col):
                        if a:
                            out[k * n + j] = out[k * n + j] + c * a
        return out

    def validate(self):
        n = self.dim
        F = self.field
        if len(self.delta) != n or any(len(v) != n * n for v in self.delta) or len(self.eps) != n:
            return ["dimension mismatch"]
        v = []
        for i in range(n):
            d = self.delta[i]
            lhs = [F.zero] * (n ** 3)
            rhs = [F.zero] * (n ** 3)
            for a in range(n):
                for b in range(n):
                    c = d[a * n + b]
                    if not c:
                        continue
                    for x, y in enumerate(self.delta[a]):
                        if y:
                            lhs[x * n + b] = lhs[x * n + b] + c * y
                    for x, y in enumerate(self.delta[b]):
                        if y:
                            rhs[a * n * n + x] = rhs[a * n * n + x] + c * y
            if lhs != rhs:
                v.append("coassociativity fails at %d" % i)
            left = [F.zero] * n
            right = [F.zero] * n
            for a in range(n):
                for b in range(n):
                    c = d[a * n + b]
                    if c:
                        left[b] = left[b] + c * self.eps[a]
                        right[a] = right[a] + c * self.eps[b]
            if tuple(left) != self.e(i) or tuple(right) != self.e(i):
                v.append("counit law fails at %d" % i)
        return v

    def to_dict(self):
        s = self.field.serialize
        return {"field": self.field.tag, "dim": self.dim, "basis": list(self.basis),
                "delta": [[s(x) for x in d] for d in self.delta], "eps": [s(x) for x in self.eps]}

    @classmethod
    def from_dict(cls, d, field=None):
        F = field or Field.parse(d.get("field", "Q"))
        basis = d.get("basis") or ["c%d" % i for i in range(d["dim"])]
        return cls(F, basis, d["delta"], d["eps"], name=d.get("name"))


class CoalgebraMap:
    def __init__(self, source, target, matrix, name=None):
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(target.field(x) for x in r) for r in matrix)
        self.name = name

    def __call__(self, v):
        return matvec(self.matrix, v)

    def validate(self):
        C, D = self.source, self.target
        if len(self.matrix) != D.dim or any(len(r) != C.dim for r in self.matrix):
            return ["dimension mismatch"]
        v = []
        PP = kron(self.matrix, self.matrix)
        for i in range(C.dim):
            if D.comul(self(C.e(i))) != matvec(PP, C.delta[i]):
                v.append("not comultiplicative at %d" % i)
            if D.counit(self(C.e(i))) != C.eps[i]:
                v.append("not counital at %d" % i)
        return v

    def to_dict(self):
        s = self.target.field.serialize
        return {"source": self.source.to_dict(), "target": self.target.to_dict(),
                "matrix": [[s(x) for x in r] for r in self.matrix]}

    @classmethod
    def from_dict(cls, d, field=None):
        C = FDCoalgebra.from_dict(d["source"], field)
        D = FDCoalgebra.from_dict(d["target"], field or C.field)
        return cls(C, D, d["matrix"], name=d.get("name"))


def grouplike_coalgebra(labels, field=QQ):
    n = len(labels)
    delta = []
    for i in range(n):
        v = [0] * (n * n)
        v[i * n + i] = 1
        delta.append(v)
    return FDCoalgebra(field, list(labels), delta, [1] * n, name="k{%s}" % ",".join(labels))


def set_map_coalgebra_map(C, D, f):
    """The linear extension of a map of grouplike bases ``f: C.basis -> D.basis``."""
    M = [[1 if f[C.basis[j]] == D.basis[i] else 0 for j in range(C.dim)] for i in range(D.dim)]
    return CoalgebraMap(C, D, M)


# ---------------------------------------------------------------- corings

class Coring:
    """``R``-coring on an ``(R, R)``-bimodule ``C``.

    ``delta`` is the matrix of ``Delta`` into the flat tensor ``C (x)_k C``;
    only its image in ``C (x)_R C`` matters.  ``eps`` is ``R.dim x C.dim``.
    """

    def __init__(self, C, delta, eps, name=None):
        F = C.field
        self.R = C.R
        self.C = C
        self.field = F
        self.dim = C.dim
        self.delta = tuple(tuple(F(x) for x in row) for row in delta)
        self.eps = tuple(tuple(F(x) for x in row) for row in eps)
        self.name = name
        self._tt = None

    @property
    def tensor(self):
        if self._tt is None:
            self._tt = balanced_tensor(self.C, self.C)
        return self._tt

    def comul_flat(self, c):
        return matvec(self.delta, c)

    def comul(self, c):
        return self.tensor.project(self.comul_flat(c))

    def counit(self, c):
        return matvec(self.eps, c)

    def validate(self):
        C, R, F, n = self.C, self.R, self.field, self.dim
        v = ["bimodule: " + s for s in C.validate()]
        if v:
            return v
        if len(self.delta) != n * n or any(len(r) != n for r in self.delta):
            return ["comultiplication has the wrong size"]
        if len(self.eps) != R.dim or any(len(r) != n for r in self.eps):
            return ["counit has the wrong size"]
        T = self.tensor
        for i in range(R.dim):
            if not _mat_eq(matmul(self.eps, C.left[i]), matmul(R.left_mult[i], self.eps)):
                v.append("counit not left linear at %d" % i)
            if not _mat_eq(matmul(self.eps, C.right[i]), matmul(R.right_mult[i], self.eps)):
                v.append("counit not right linear at %d" % i)
            for j in range(n):
                c = C.e(j)
                if self.comul(matvec(C.left[i], c)) != matvec(T.bimodule.left[i], self.comul(c)):
                    v.append("comultiplication not left linear at (%d,%d)" % (i, j))
                if self.comul(matvec(C.right[i], c)) != matvec(T.bimodule.right[i], self.comul(c)):
                    v.append("comultiplication not right linear at (%d,%d)" % (i, j))
        if v:
            return v
        for j in range(n):
            w = self.comul_flat(C.e(j))
            left = zeros(F, n)
            right = zeros(F, n)
            for a in range(n):
                for b in range(n):
                    x = w[a * n + b]
                    if x:
                        left = add(left, scale(x, C.act_left(self.counit(C.e(a)), C.e(b))))
                        right = add(right, scale(x, C.act_right(C.e(a), self.counit(C.e(b)))))
            if left != C.e(j) or right != C.e(j):
                v.append("counit law fails at %d" % j)
        if v:
            return v
        T3 = TensorProduct(T.bimodule, C)
        for j in range(n):
            w = self.comul_flat(C.e(j))
            lhs = zeros(F, T3.dim)
            rhs = zeros(F, T3.dim)
            for a in range(n):
                for b in range(n):
                    x = w[a * n + b]
                    if not x:
                        continue
                    # (Delta (x) C)(c_a (x) c_b) and (C (x) Delta)(c_a (x) c_b)
                    lhs = add(lhs, scale(x, T3.pure(self.comul(C.e(a)), C.e(b))))
                    db = self.comul_flat(C.e(b))
                    for p in range(n):
                        for q in range(n):
                            y = db[p * n + q]
                            if y:
                                rhs = add(rhs, scale(x * y, T3.pure(T.pure(C.e(a), C.e(p)), C.e(q))))
            if lhs != rhs:
                v.append("coassociativity fails at %d" % j)
        return v

    def to_dict(self):
        s = self.field.serialize
        return {"bimodule": self.C.to_dict(),
                "delta": [[s(x) for x in r] for r in self.delta],
                "eps": [[s(x) for x in r] for r in self.eps]}

    @classmethod
    def from_dict(cls, d, field=None):
        C = Bimodule.from_dict(d["bimodule"], field)
        return cls(C, d["delta"], d["eps"], name=d.get("name"))


def trivial_coring(R):
    """``R`` itself with ``Delta(r) = r (x) 1``."""
    F = R.field
    C = regular_bimodule(R)
    n = R.dim
    cols = [kron_vec(R.e(i), R.unit) for i in range(n)]
    return Coring(C, transpose(tuple(cols), n * n), identity(F, n), name="trivial")


def ideal_coring_kxk(field=QQ):
    """``k`` over ``k x k`` through the first projection, ``eps(s) = (s, 0)``."""
    R = product_algebra(2, field)
    C = Bimodule(R, R, 1, [[[1]], [[0]]], [[[1]], [[0]]])
    return Coring(C, [[1]], [[1], [0]], name="ideal(kxk,k)")


# ---------------------------------------------------------------- bialgebras

class Bialgebra:
    def __init__(self, algebra, coalgebra, name=None):
        if algebra.dim != coalgebra.dim:
            raise ValueError("dimension mismatch")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.field = algebra.field
        self.dim = algebra.dim
        self.basis = algebra.basis
        self.name = name

    def validate(self):
        A, C = self.algebra, self.coalgebra
        v = ["algebra: " + s for s in A.validate()] + ["coalgebra: " + s for s in C.validate()]
        if v:
            return v
        AA = tensor_algebra(A, A)
        if C.comul(A.unit) != kron_vec(A.unit, A.unit):
            v.append("Delta(1) != 1 (x) 1")
        if C.counit(A.unit) != self.field.one:
            v.append("eps(1) != 1")
        for i in range(A.dim):
            for j in range(A.dim):
                ab = A.mul(A.e(i), A.e(j))
                if C.comul(ab) != AA.mul(C.delta[i], C.delta[j]):
                    v.append("Delta not multiplicative at (%d,%d)" % (i, j))
                if C.counit(ab) != C.eps[i] * C.eps[j]:
                    v.append("eps not multiplicative at (%d,%d)" % (i, j))
        return v

    def to_dict(self):
        return {"algebra": self.algebra.to_dict(), "coalgebra": self.coalgebra.to_dict()}

    @classmethod
    def from_dict(cls, d, field=None):
        A = FDAlgebra.from_dict(d["algebra"], field)
        C = FDCoalgebra.from_dict(d["coalgebra"], field or A.field)
        return cls(A, C, name=d.get("name"))


def validate_structure(x):
    """Violations of every structural identity of ``x`` (empty list when valid)."""
    return x.validate()
