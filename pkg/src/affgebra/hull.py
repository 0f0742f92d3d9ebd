"""Derivation-type affgebras, semidirect extensions g(delta) and Lie hulls."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .affine import AffgebraError, LieAffgebra
from .linalg import Matrix, vadd, zero_vector
from .lie import LieAlgebra, centroid, derivations, in_lin, is_scalar_map


class HullHypothesisError(AffgebraError):
    pass


def is_derivation_type(A: LieAffgebra) -> bool:
    """lambda - kappa is a derivation; equivalently kappa lies in the centroid."""
    g = A.fibre
    by_delta = in_lin(g, A.delta, derivations(g))
    by_kappa = in_lin(g, A.kappa, centroid(g))
    if by_delta != by_kappa:
        raise RuntimeError("derivation test and centroid test disagree")
    return by_delta


def semidirect_by_derivation(g: LieAlgebra, delta: Matrix, name: str | None = None) -> LieAlgebra:
    """g + F.delta with [x + a delta, y + b delta] = [x,y] + a delta(y) - b delta(x)."""
    F, n = g.field, g.dim
    if delta.shape != (n, n):
        raise ValueError(f"delta must be {n}x{n}")
    if not in_lin(g, delta, derivations(g)):
        raise ValueError("delta is not a derivation")
    st = [[tuple(g.structure[i][j]) + (F.zero,) for j in range(n)] + [None] for i in range(n)]
    st.append([None] * (n + 1))
    for i in range(n):
        d = delta.column(i) + (F.zero,)
        st[i][n] = tuple(-x for x in d)
        st[n][i] = d
    st[n][n] = zero_vector(F, n + 1)
    if name is None and g.name:
        name = f"{g.name}(delta)"
    return LieAlgebra(F, tuple(tuple(r) for r in st), name)


@dataclass(frozen=True)
class HullResult:
    extended: LieAlgebra
    ambient: LieAffgebra
    offset: tuple

    def embed(self, a) -> tuple:
        return vadd(tuple(a) + (self.extended.field.zero,), self.offset)


def hull(A: LieAffgebra, extra_random_pairs: int = 25, seed: int = 0) -> HullResult:
    """Embed A as the coset g + delta of the Lie algebra g(delta), for scalar kappa."""
    g, F, n = A.fibre, A.field, A.dim
    if not is_scalar_map(A.kappa):
        if is_derivation_type(A):
            raise HullHypothesisError("hull hypothesis violated: derivation-type but hull "
                                      "hypothesis unmet (kappa is in the centroid, not scalar)")
        raise HullHypothesisError("hull hypothesis violated: kappa is not a scalar map")
    k0 = A.kappa[0][0] if n else F.zero
    delta = A.lam - Matrix.scalar(F, n, k0)
    ext = semidirect_by_derivation(g, delta)
    I1 = Matrix.scalar(F, n + 1, k0)
    ambient = LieAffgebra(ext, I1, I1, tuple(A.s) + (1 - k0,))
    res = HullResult(ext, ambient, zero_vector(F, n) + (F.one,))
    rng = random.Random(seed)
    pts = [zero_vector(F, n)] + list(g.basis())
    pairs = [(a, b) for a in pts for b in pts]
    pairs += [(F.random_vector(rng, n), F.random_vector(rng, n)) for _ in range(extra_random_pairs)]
    for a, b in pairs:
        if ambient.bracket(res.embed(a), res.embed(b)) != res.embed(A.bracket(a, b)):
            raise RuntimeError(f"hull embedding does not preserve the bracket at {a}, {b}")
    return res


def idempotent_criterion(A: LieAffgebra) -> bool:
    """{a, a} = a for all a; holds iff s = 0 and kappa = id."""
    F, n = A.field, A.dim
    algebraic = all(x == 0 for x in A.s) and A.kappa == Matrix.identity(F, n)
    pointwise = A.bracket(zero_vector(F, n), zero_vector(F, n)) == zero_vector(F, n) and all(
        A.bracket(e, e) == e for e in A.fibre.basis())
    if algebraic != pointwise:
        raise RuntimeError("idempotency tests disagree")
    return algebraic
