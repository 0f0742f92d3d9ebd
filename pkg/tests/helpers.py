"""Shared generators for the test suite."""

import itertools

from affgebra.affine import LieAffgebra
from affgebra.cocycle import AffineCocycleData
from affgebra.linalg import Matrix, nullspace, unit_vector
from affgebra.lie import gen_der_pairs, split_pair


def random_pair(g, rng):
    v = [g.field.zero] * (2 * g.dim ** 2)
    for b in gen_der_pairs(g).basis:
        c = g.field.random(rng)
        v = [x + c * y for x, y in zip(v, b)]
    return split_pair(g, v)


def random_affgebra(g, rng):
    kappa, lam = random_pair(g, rng)
    return LieAffgebra(g, kappa, lam, g.field.random_vector(rng, g.dim))


def random_in(space, rng):
    F = space.field
    v = [F.zero] * space.ambient
    for b in space.basis:
        c = F.random(rng)
        v = [x + c * y for x, y in zip(v, b)]
    return tuple(v)


def linear_space(F, nvars, residual):
    """Kernel of a linear map given as a function returning a flat tuple of residuals."""
    cols = [tuple(residual(unit_vector(F, nvars, k))) for k in range(nvars)]
    rows = tuple(tuple(c[r] for c in cols) for r in range(len(cols[0])))
    return nullspace(Matrix(F, rows, nvars))


def _dot(u, v, F):
    return sum((x * y for x, y in zip(u, v)), F.zero)


def _form(pi, a, b, F):
    return _dot(a, pi.apply(b), F)


def pi_from_upper(F, n, upper):
    m = [[F.zero] * n for _ in range(n)]
    for (i, j), c in zip(itertools.combinations(range(n), 2), upper):
        m[i][j], m[j][i] = c, -c
    return Matrix(F, tuple(tuple(r) for r in m), n)


def cocycle_unknowns(n):
    return n * (n - 1) // 2 + n


def unpack_cocycle(F, n, v, rho, tau):
    k = n * (n - 1) // 2
    return AffineCocycleData(pi_from_upper(F, n, v[:k]), tuple(rho), tuple(v[k:]), F(tau))


def cocycle_space(A):
    """(pi, sigma) solving the 2-cocycle identity and sigma([a,b]) = pi(a, delta b) + pi(lambda a, b).

    Written out coordinate-wise here so it does not share code with the package checks.
    """
    g, F, n = A.fibre, A.field, A.dim
    E = g.basis()
    delta = A.lam - A.kappa

    def residual(v):
        k = n * (n - 1) // 2
        pi, sigma = pi_from_upper(F, n, v[:k]), v[k:]
        out = []
        for a, b, c in itertools.product(E, repeat=3):
            out.append(_form(pi, a, g.bracket(b, c), F) + _form(pi, b, g.bracket(c, a), F)
                       + _form(pi, c, g.bracket(a, b), F))
        for a, b in itertools.product(E, repeat=2):
            out.append(_dot(sigma, g.bracket(a, b), F) - _form(pi, a, delta.apply(b), F)
                       - _form(pi, A.lam.apply(a), b, F))
        return out

    return linear_space(F, cocycle_unknowns(n), residual)
