"""Random small bimodules over a prime field for the property tests."""
import itertools
import random

from semisep.algstruct import (
    bimodule_of_map, change_basis, direct_sum, dual_numbers, ground, outer_bimodule,
    product_algebra, truncated_poly, unit_map, upper_triangular,
)
from semisep.linalg import GF, rank


def small_algebras(F):
    return [ground(F), product_algebra(2, F), product_algebra(3, F), dual_numbers(F),
            truncated_poly(3, F), upper_triangular(F)]


def characters(A):
    """Algebra maps ``A -> k`` by exhaustive search over the field."""
    F = A.field
    out = []
    for vals in itertools.product(F.elements(), repeat=A.dim):
        chi = lambda v: sum((a * b for a, b in zip(vals, v)), F.zero)
        if chi(A.unit) != F.one:
            continue
        if all(chi(A.mul(A.e(i), A.e(j))) == vals[i] * vals[j]
               for i in range(A.dim) for j in range(A.dim)):
            out.append(tuple(vals))
    return out


def left_modules(A):
    """``(dim, matrices)`` for the regular module and every character."""
    mods = [(A.dim, A.left_mult)]
    for chi in characters(A):
        mods.append((1, [((c,),) for c in chi]))
    return mods


def right_modules(A):
    mods = [(A.dim, A.right_mult)]
    for chi in characters(A):
        mods.append((1, [((c,),) for c in chi]))
    return mods


def _blocks(R, S):
    out = []
    for p, P in left_modules(R):
        for q, Q in right_modules(S):
            if p * q <= 3:
                out.append(outer_bimodule(R, S, P, Q))
    if R.dim == 1 and S.dim <= 3:
        out.append(bimodule_of_map(unit_map(S), side="right"))
    if S.dim == 1 and R.dim <= 3:
        out.append(bimodule_of_map(unit_map(R), side="left"))
    return out


def _random_invertible(F, n, rng):
    els = F.elements()
    while True:
        T = tuple(tuple(rng.choice(els) for _ in range(n)) for _ in range(n))
        if rank(T, F) == n:
            return T


def random_bimodule(rng, p=5, max_dim=3):
    """A bimodule of dimension at most ``max_dim`` over a random pair of
    algebras of dimension at most 3, in a random basis."""
    F = GF(p)
    algs = small_algebras(F)
    while True:
        R, S = rng.choice(algs), rng.choice(algs)
        blocks = _blocks(R, S)
        if not blocks:
            continue
        M = rng.choice(blocks)
        while True:
            extra = [b for b in blocks if M.dim + b.dim <= max_dim]
            if not extra or rng.random() < 0.5:
                break
            M = direct_sum(M, rng.choice(extra))
        return change_basis(M, _random_invertible(F, M.dim, rng))


def random_bimodules(count, seed=0, **kw):
    rng = random.Random(seed)
    return [random_bimodule(rng, **kw) for _ in range(count)]

