"""Witness checks by direct substitution into the raw structure constants.

Nothing here calls the solvers or the action-matrix helpers of the
structure classes; products are expanded from ``mult``/``delta`` tables and
action matrices with plain loops.
"""
from .linalg import solve_affine


def _z(F, n):
    return [F.zero] * n


def _prod(A, u, v):
    F = A.field
    n = len(A.unit)
    out = _z(F, n)
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            for k in range(n):
                c = A.mult[i][j][k]
                if c:
                    out[k] += u[i] * v[j] * c
    return out


def _apply(M, v):
    F_zero = v[0] - v[0] if len(v) else 0
    out = []
    for row in M:
        acc = F_zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _basis(F, n, i):
    v = _z(F, n)
    v[i] = F.one
    return v


def _act(mats, coeffs, m):
    """``sum_i coeffs[i] * mats[i] @ m``."""
    F_zero = m[0] - m[0] if len(m) else 0
    out = [F_zero] * len(m)
    for c, M in zip(coeffs, mats):
        if c:
            for r, x in enumerate(_apply(M, m)):
                out[r] += c * x
    return out


def _eq(u, v):
    return len(u) == len(v) and all(a == b for a, b in zip(u, v))


# ---------------------------------------------------------------- ring maps

def ring_ext_witness(phi, E, mode):
    """``E`` is an ``R``-bimodule map ``S -> R`` satisfying the mode equation."""
    R, S = phi.source, phi.target
    F = R.field
    nR, nS = len(R.unit), len(S.unit)
    P = phi.matrix
    for i in range(nR):
        r = _basis(F, nR, i)
        pr = _apply(P, r)
        for j in range(nS):
            s = _basis(F, nS, j)
            Es = _apply(E, s)
            if not _eq(_apply(E, _prod(S, pr, s)), _prod(R, r, Es)):
                return False
            if not _eq(_apply(E, _prod(S, s, pr)), _prod(R, Es, r)):
                return False
    if mode == "semiseparable":
        return _eq(_apply(P, _apply(E, list(S.unit))), list(S.unit))
    if mode == "separable":
        return all(_eq(_apply(E, _apply(P, _basis(F, nR, i))), _basis(F, nR, i)) for i in range(nR))
    if mode == "naturally_full":
        return all(_eq(_apply(P, _apply(E, _basis(F, nS, j))), _basis(F, nS, j)) for j in range(nS))
    raise ValueError(mode)


def ring_ext_E_condition(phi):
    """Feasibility of ``E in _R Hom_R(S, R)`` with ``phi E(1) = 1``, from a
    system written out entry by entry."""
    R, S = phi.source, phi.target
    F = R.field
    nR, nS = len(R.unit), len(S.unit)
    P = phi.matrix

    def var(k, j):
        return k * nS + j
    nv = nR * nS
    rows, rhs = [], []
    for i in range(nR):
        r = _basis(F, nR, i)
        pr = _apply(P, r)
        for j in range(nS):
            s = _basis(F, nS, j)
            for side in (0, 1):
                prod = _prod(S, pr, s) if side == 0 else _prod(S, s, pr)
                # E(prod)_k - (r E(s_j))_k  (resp. (E(s_j) r)_k)
                for k in range(nR):
                    row = _z(F, nv)
                    for t in range(nS):
                        if prod[t]:
                            row[var(k, t)] += prod[t]
                    for a in range(nR):
                        # coefficient of E(s_j)_a in (r e_a)_k or (e_a r)_k
                        ea = _basis(F, nR, a)
                        c = (_prod(R, r, ea) if side == 0 else _prod(R, ea, r))[k]
                        if c:
                            row[var(a, j)] -= c
                    if any(row):
                        rows.append(row)
                        rhs.append(F.zero)
    for q in range(nS):
        row = _z(F, nv)
        for k in range(nR):
            for t in range(nS):
                c = P[q][k] * S.unit[t]
                if c:
                    row[var(k, t)] += c
        rows.append(row)
        rhs.append(S.unit[q])
    return solve_affine(rows, rhs, F, ncols=nv).feasible


# ---------------------------------------------------------------- coalgebra maps

def _comul(C, v):
    F = C.field
    n = len(C.eps)
    out = _z(F, n * n)
    for i, c in enumerate(v):
        if c:
            for k, x in enumerate(C.delta[i]):
                if x:
                    out[k] += c * x
    return out


def coalg_witness(psi, chi, mode):
    """``chi: D -> C`` is a ``D``-bicomodule map satisfying the mode equation."""
    C, D = psi.source, psi.target
    F = C.field
    n, m = len(C.eps), len(D.eps)
    P = psi.matrix
    for j in range(m):
        cj = _apply(chi, _basis(F, m, j))
        dc = _comul(C, cj)
        lhs_l, lhs_r = _z(F, m * n), _z(F, n * m)
        for a in range(n):
            for b in range(n):
                x = dc[a * n + b]
                if not x:
                    continue
                for p in range(m):
                    if P[p][a]:
                        lhs_l[p * n + b] += x * P[p][a]
                    if P[p][b]:
                        lhs_r[a * m + p] += x * P[p][b]
        dd = D.delta[j]
        rhs_l, rhs_r = _z(F, m * n), _z(F, n * m)
        for a in range(m):
            for b in range(m):
                x = dd[a * m + b]
                if not x:
                    continue
                for i in range(n):
                    if chi[i][b]:
                        rhs_l[a * n + i] += x * chi[i][b]
                    if chi[i][a]:
                        rhs_r[i * m + b] += x * chi[i][a]
        if not (_eq(lhs_l, rhs_l) and _eq(lhs_r, rhs_r)):
            return False
    if mode == "semiseparable":
        for k in range(n):
            v = _apply(chi, _apply(P, _basis(F, n, k)))
            if sum((a * b for a, b in zip(C.eps, v)), F.zero) != C.eps[k]:
                return False
        return True
    if mode == "separable":
        return all(_eq(_apply(P, _apply(chi, _basis(F, m, j))), _basis(F, m, j)) for j in range(m))
    if mode == "naturally_full":
        return all(_eq(_apply(chi, _apply(P, _basis(F, n, k))), _basis(F, n, k)) for k in range(n))
    raise ValueError(mode)


def is_coalgebra_map(f, C, D):
    F = C.field
    n, m = len(C.eps), len(D.eps)
    for i in range(n):
        img = _apply(f, _basis(F, n, i))
        lhs = _comul(D, img)
        rhs = _z(F, m * m)
        for a in range(n):
            for b in range(n):
                x = C.delta[i][a * n + b]
                if not x:
                    continue
                for p in range(m):
                    for q in range(m):
                        y = f[p][a] * f[q][b]
                        if y:
                            rhs[p * m + q] += x * y
        if not _eq(lhs, rhs):
            return False
        if sum((a * b for a, b in zip(D.eps, img)), F.zero) != C.eps[i]:
            return False
    return True


# ---------------------------------------------------------------- corings

def coring_z(Cr, z, mode):
    """``z`` is ``R``-invariant and satisfies the requested identity."""
    C, R = Cr.C, Cr.R
    F = Cr.field
    nR, n = len(R.unit), C.dim
    for i in range(nR):
        if not _eq(_apply(C.left[i], z), _apply(C.right[i], z)):
            return False
    ez = _apply(Cr.eps, z)
    if mode == "cosplit":
        return _eq(ez, list(R.unit))
    if mode == "semicosplit":
        return all(_eq(_act(C.left, ez, _basis(F, n, j)), _basis(F, n, j)) for j in range(n))
    if mode == "natfull_G":
        return all(_eq(_act(C.left, _apply(Cr.eps, _basis(F, n, j)), z), _basis(F, n, j))
                   for j in range(n))
    raise ValueError(mode)


# ---------------------------------------------------------------- bimodules

def bimodule_tensor(M, terms):
    """``terms`` is a list of ``(f, m)`` with ``f`` an ``S.dim x M.dim`` matrix.

    Checks that each ``f`` is right ``S``-linear, that ``sum f_i (x) m_i`` is
    ``S``-central modulo the balancing relations, and that
    ``sum m f_i(m_i) = m`` on every basis vector.  Returns ``(ok, z)``.
    """
    S = M.S
    F = M.field
    n, nS, nR = M.dim, len(S.unit), len(M.R.unit)

    def mul_S(s, t):
        return _prod(S, s, t)
    # right S-linearity of each f: f(m s) = f(m) s
    for f, _ in terms:
        for j in range(nS):
            s = _basis(F, nS, j)
            for b in range(n):
                mb = _basis(F, n, b)
                if not _eq(_apply(f, _apply(M.right[j], mb)), mul_S(_apply(f, mb), s)):
                    return False, None
    # the space of functionals, for the balancing relations
    fun_rows = []
    nv = nS * n
    for j in range(nS):
        s = _basis(F, nS, j)
        # X rho_j - Rs X = 0 entrywise
        for p in range(nS):
            for q in range(n):
                row = _z(F, nv)
                for k in range(n):
                    if M.right[j][k][q]:
                        row[p * n + k] += M.right[j][k][q]
                for k in range(nS):
                    c = mul_S(_basis(F, nS, k), s)[p]
                    if c:
                        row[k * n + q] -= c
                if any(row):
                    fun_rows.append(row)
    if fun_rows:
        from .linalg import kernel_and_image
        funcs = [list(v) for v in kernel_and_image(fun_rows, F, ncols=nv)[0]]
    else:
        funcs = [_basis(F, nv, i) for i in range(nv)]

    def f_of(flat):
        return [flat[p * n:(p + 1) * n] for p in range(nS)]

    def tensor(fflat, m):
        return [a * b for a in fflat for b in m]
    rels = []
    for fl in funcs:
        f = f_of(fl)
        for i in range(nR):
            # (f r)(x) = f(r x)
            fr = [x for row in _matmul(f, M.left[i]) for x in row]
            for b in range(n):
                mb = _basis(F, n, b)
                rels.append([u - w for u, w in zip(tensor(fr, mb), tensor(fl, _apply(M.left[i], mb)))])
    for j in range(nS):
        s = _basis(F, nS, j)
        lhs = _z(F, nv * n)
        for f, m in terms:
            sf = [[x for x in mul_S(s, [f[p][q] for p in range(nS)])] for q in range(n)]
            sf_flat = [sf[q][p] for p in range(nS) for q in range(n)]
            flat = [x for row in f for x in row]
            lhs = [a + b - c for a, b, c in zip(lhs, tensor(sf_flat, m), tensor(flat, _apply(M.right[j], m)))]
        if any(lhs):
            if not rels or not _in_span(lhs, rels, F):
                return False, None
    z = _z(F, nS)
    for f, m in terms:
        z = [a + b for a, b in zip(z, _apply(f, m))]
    for b in range(n):
        mb = _basis(F, n, b)
        acc = _z(F, n)
        for f, m in terms:
            acc = [a + c for a, c in zip(acc, _act(M.right, _apply(f, m), mb))]
        if not _eq(acc, mb):
            return False, z
    return True, z


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), A[i][0] - A[i][0])
             for j in range(len(B[0]))] for i in range(len(A))]


def _in_span(v, vs, F):
    from .linalg import rank
    return rank([tuple(x) for x in vs] + [tuple(v)], F) == rank([tuple(x) for x in vs], F)


# ---------------------------------------------------------------- bialgebras

def antipode(B, Smat):
    """``(right_antipode, anti_multiplicative, anti_comultiplicative)`` for the
    linear map ``Smat`` on the bialgebra ``B``."""
    A, C = B.algebra, B.coalgebra
    F = B.field
    n = len(A.unit)

    def Sv(v):
        return _apply(Smat, v)
    right = True
    for i in range(n):
        acc = _z(F, n)
        d = C.delta[i]
        for a in range(n):
            for b in range(n):
                x = d[a * n + b]
                if x:
                    acc = [u + x * w for u, w in zip(acc, _prod(A, _basis(F, n, a), Sv(_basis(F, n, b))))]
        if not _eq(acc, [C.eps[i] * u for u in A.unit]):
            right = False
    mult = True
    for i in range(n):
        for j in range(n):
            ei, ej = _basis(F, n, i), _basis(F, n, j)
            if not _eq(Sv(_prod(A, ei, ej)), _prod(A, Sv(ej), Sv(ei))):
                mult = False
    comult = True
    for i in range(n):
        lhs = _comul(C, Sv(_basis(F, n, i)))
        rhs = _z(F, n * n)
        d = C.delta[i]
        for a in range(n):
            for b in range(n):
                x = d[a * n + b]
                if not x:
                    continue
                sa, sb = Sv(_basis(F, n, a)), Sv(_basis(F, n, b))
                for p in range(n):
                    for q in range(n):
                        y = sb[p] * sa[q]
                        if y:
                            rhs[p * n + q] += x * y
        if not _eq(lhs, rhs):
            comult = False
    return right, mult, comult


# ---------------------------------------------------------------- finite categories
#
# These work on the JSON form of a category: ``objects``, ``homs`` keyed by
# "A->B", ``id`` and ``comp`` keyed by "g∘f" (identity composites implicit).

class _RawCat:
    def __init__(self, d):
        self.objects = list(d["objects"])
        self.ids = dict(d["id"])
        self.src, self.tgt = {}, {}
        self.homs = {}
        for key, ms in d["homs"].items():
            a, b = key.split("->", 1)
            self.homs[(a, b)] = list(ms)
            for m in ms:
                self.src[m], self.tgt[m] = a, b
        for x, i in self.ids.items():
            self.src[i], self.tgt[i] = x, x
            self.homs.setdefault((x, x), [])
            if i not in self.homs[(x, x)]:
                self.homs[(x, x)].append(i)
        self.table = {}
        for key, h in d.get("comp", {}).items():
            g, f = key.split("∘", 1)
            self.table[(g, f)] = h

    def hom(self, a, b):
        return self.homs.get((a, b), [])

    def c(self, g, f):
        if self.tgt[f] != self.src[g]:
            raise ValueError("%s and %s are not composable" % (g, f))
        if f == self.ids[self.src[f]]:
            return g
        if g == self.ids[self.tgt[g]]:
            return f
        return self.table[(g, f)]

    def morphisms(self):
        return list(self.src)


def retraction(source, target, obj_map, mor_map, table, mode):
    """Binaturality of ``P`` given as ``{"X->Y": {k: p}}`` and the law for
    ``mode`` checked on every triple."""
    C, D = _RawCat(source), _RawCat(target)
    P = {}
    for key, row in table.items():
        x, y = key.split("->", 1)
        P[(x, y)] = dict(row)
    for x in C.objects:
        for y in C.objects:
            for k in D.hom(obj_map[x], obj_map[y]):
                p = P.get((x, y), {}).get(k)
                if p is None or p not in C.hom(x, y):
                    return False
    for x in C.objects:
        for y in C.objects:
            for k in D.hom(obj_map[x], obj_map[y]):
                p = P[(x, y)][k]
                for h in C.morphisms():
                    if C.tgt[h] != x:
                        continue
                    for l in C.morphisms():
                        if C.src[l] != y:
                            continue
                        k2 = D.c(mor_map[l], D.c(k, mor_map[h]))
                        if P[(C.src[h], C.tgt[l])][k2] != C.c(l, C.c(p, h)):
                            return False
            for f in C.hom(x, y):
                p = P[(x, y)][mor_map[f]]
                if mode == "separable" and p != f:
                    return False
                if mode == "semiseparable" and mor_map[p] != mor_map[f]:
                    return False
            if mode == "naturally_full":
                for k in D.hom(obj_map[x], obj_map[y]):
                    if mor_map[P[(x, y)][k]] != k:
                        return False
    return True


def associated_idempotent(source, target, obj_map, mor_map, e):
    """``e`` is a natural idempotent on the identity with ``F e = id``."""
    C, D = _RawCat(source), _RawCat(target)
    for x in C.objects:
        ex = e.get(x)
        if ex not in C.hom(x, x) or C.c(ex, ex) != ex:
            return False
        if mor_map[ex] != D.ids[obj_map[x]]:
            return False
    for f in C.morphisms():
        if C.c(f, e[C.src[f]]) != C.c(e[C.tgt[f]], f):
            return False
    return True


def regular_unit(adj, witness, side):
    """``eta nu eta = eta`` with ``nu: GF -> Id`` natural (left side), or
    ``eps gamma eps = eps`` with ``gamma: Id -> FG`` natural (right side).

    ``adj`` holds ``C``, ``D`` (category dicts), ``F`` and ``G`` (each with
    ``obj_map``/``mor_map``), ``eta`` and ``eps``.
    """
    if side == "left":
        X = _RawCat(adj["C"])
        inner, outer, unit = adj["F"], adj["G"], adj["eta"]
    else:
        X = _RawCat(adj["D"])
        inner, outer, unit = adj["G"], adj["F"], adj["eps"]
    T = lambda f: outer["mor_map"][inner["mor_map"][f]]
    To = lambda x: outer["obj_map"][inner["obj_map"][x]]
    for x in X.objects:
        w = witness.get(x)
        if side == "left":
            if w not in X.hom(To(x), x):
                return False
            if X.c(unit[x], X.c(w, unit[x])) != unit[x]:
                return False
        else:
            if w not in X.hom(x, To(x)):
                return False
            if X.c(unit[x], X.c(w, unit[x])) != unit[x]:
                return False
    for f in X.morphisms():
        a, b = X.src[f], X.tgt[f]
        if side == "left":
            if X.c(f, witness[a]) != X.c(witness[b], T(f)):
                return False
        else:
            if X.c(T(f), witness[a]) != X.c(witness[b], f):
                return False
    return True


def functor_composite(first, second):
    """Maps of ``second o first`` on raw ``obj_map``/``mor_map`` tables."""
    return ({x: second["obj_map"][y] for x, y in first["obj_map"].items()},
            {f: second["mor_map"][g] for f, g in first["mor_map"].items()})
