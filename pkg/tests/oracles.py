"""Brute-force oracles over F_p, written with numpy and independent of the package solvers.

Every candidate map (or pair of maps) is enumerated and the defining identity
is evaluated on all basis pairs.  The count of solutions is p^dim of the
solution space.
"""

import itertools

import numpy as np


def structure_array(g):
    n = g.dim
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c[i, j] = [int(x) for x in g.structure[i][j]]
    return c


def all_matrices(p, n, chunk=200_000):
    """Yield arrays of shape (m, n, n) covering every n x n matrix over F_p."""
    total = p ** (n * n)
    digits = p ** np.arange(n * n, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        flat = (idx[:, None] // digits[None, :]) % p
        yield flat.reshape(-1, n, n)


def _bracket_cols(c, X, p):
    """B[m, i, j, :] = [X e_i, e_j] for each candidate X (columns are images)."""
    # X[m, k, i] is the e_k-coefficient of X e_i
    return np.einsum("mki,kjl->mijl", X, c) % p


def _bracket_rows(c, X, p):
    """B[m, i, j, :] = [e_i, X e_j]."""
    return np.einsum("mkj,ikl->mijl", X, c) % p


def _apply_to_brackets(c, X, p):
    """B[m, i, j, :] = X [e_i, e_j]."""
    return np.einsum("mlk,ijk->mijl", X, c) % p


def count_derivations(g, p):
    c = structure_array(g) % p
    total = 0
    for X in all_matrices(p, g.dim):
        lhs = _apply_to_brackets(c, X, p)
        rhs = (_bracket_cols(c, X, p) + _bracket_rows(c, X, p)) % p
        total += int(np.all((lhs == rhs).reshape(len(X), -1), axis=1).sum())
    return total


def count_centroid(g, p):
    c = structure_array(g) % p
    total = 0
    for X in all_matrices(p, g.dim):
        a = _apply_to_brackets(c, X, p)
        b = _bracket_cols(c, X, p)
        d = _bracket_rows(c, X, p)
        ok = np.all(((a == b) & (b == d)).reshape(len(X), -1), axis=1)
        total += int(ok.sum())
    return total


def count_quasicentroid(g, p):
    c = structure_array(g) % p
    total = 0
    for X in all_matrices(p, g.dim):
        ok = np.all((_bracket_cols(c, X, p) == _bracket_rows(c, X, p)).reshape(len(X), -1), axis=1)
        total += int(ok.sum())
    return total


def count_gen_pairs(g, p):
    """Pairs (kappa, lambda) with lambda[a,b] = [lambda a, b] - [a, kappa b] + [a, lambda b]."""
    c = structure_array(g) % p
    n = g.dim
    L = np.concatenate(list(all_matrices(p, n)))
    lam_part = (_apply_to_brackets(c, L, p) - _bracket_cols(c, L, p) - _bracket_rows(c, L, p)) % p
    lam_part = lam_part.reshape(len(L), -1)
    # the identity reads lam_part(lambda) == -[a, kappa b]; match the two sides by hashing
    keys = {}
    for row in map(bytes, lam_part.astype(np.int8)):
        keys[row] = keys.get(row, 0) + 1
    total = 0
    for K in all_matrices(p, n):
        kap_part = ((-_bracket_rows(c, K, p)) % p).reshape(len(K), -1)
        total += sum(keys.get(row, 0) for row in map(bytes, kap_part.astype(np.int8)))
    return total


def center_count(g, p):
    c = structure_array(g) % p
    n = g.dim
    count = 0
    for v in itertools.product(range(p), repeat=n):
        ad = np.einsum("k,kjl->jl", np.array(v), c) % p
        if not ad.any():
            count += 1
    return count


def derived_count(g, p):
    """Size of the span of all brackets, by closing the set of brackets under addition."""
    c = structure_array(g) % p
    n = g.dim
    gens = {tuple(c[i, j] % p) for i in range(n) for j in range(n)}
    span = {tuple([0] * n)}
    for v in gens:
        v = np.array(v)
        span = {tuple((np.array(s) + k * v) % p) for s in span for k in range(p)}
    return len(span)


def burnside_abelian_classes(p, n):
    """Orbit count of GL(n,p) x F_p^n on all (kappa, lambda, s) over the abelian fibre.

    (Psi, q) acts by kappa -> Psi kappa Psi^-1, lambda -> Psi lambda Psi^-1,
    s -> Psi (s + q - kappa q); orbits are counted with Burnside's lemma.
    """
    mats = np.concatenate(list(all_matrices(p, n)))
    dets = np.round(np.linalg.det(mats)).astype(np.int64) % p
    gl = mats[dets != 0]
    vecs = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    total = 0
    for P in gl:
        # kappa commutes with P
        comm = np.all(((P @ mats - mats @ P) % p).reshape(len(mats), -1) == 0, axis=1)
        C = mats[comm]
        n_lam = len(C)
        for q in vecs:
            # s fixed iff (P - I) s + P (I - kappa) q = 0
            lhs = ((P - eye) @ vecs.T) % p                      # (n, |vecs|)
            for K in C:
                shift = (P @ ((eye - K) @ q)) % p
                total += n_lam * int(np.all((lhs + shift[:, None]) % p == 0, axis=0).sum())
    order = len(gl) * len(vecs)
    assert total % order == 0
    return total // order
