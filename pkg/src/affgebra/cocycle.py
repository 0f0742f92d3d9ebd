"""2-cocycles, central extensions and cocycle extensions of Lie affgebras.

An affine cocycle omega on a(g; kappa, lambda, s) is stored through its
decomposition omega(a, b) = pi(a, b) + rho(a) + sigma(b) + tau, never as a
black-box map.  ``decompose_omega`` recovers the data from one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .affine import (
    AffgebraError, LieAffgebra, Report, iso_conditions, transport, verify_bracket_axioms,
)
from .linalg import Field, Matrix, solve, unit_vector, zero_vector, _dot
from .lie import KNOWN_SIMPLE, LieAlgebra, adjoint


class CocycleError(AffgebraError):
    pass


def _form(pi: Matrix, a, b):
    F = pi.field
    return _dot(a, pi.apply(b), F)


def is_antisymmetric(pi: Matrix) -> bool:
    return pi.is_square and pi == -pi.T


def is_two_cocycle(g: LieAlgebra, pi: Matrix) -> bool:
    if pi.shape != (g.dim, g.dim):
        raise CocycleError(f"pi must be {g.dim}x{g.dim}")
    if not is_antisymmetric(pi):
        raise CocycleError("pi is not antisymmetric")
    E = g.basis()
    for a, b, c in itertools.combinations(E, 3):
        total = (_form(pi, a, g.bracket(b, c)) + _form(pi, b, g.bracket(c, a))
                 + _form(pi, c, g.bracket(a, b)))
        if total:
            return False
    return True


def central_extension(g: LieAlgebra, pi: Matrix, name: str | None = None) -> LieAlgebra:
    """g + F.z with [a + x z, b + y z] = [a, b] + pi(a, b) z."""
    if not is_two_cocycle(g, pi):
        raise CocycleError("pi is not a 2-cocycle")
    F, n = g.field, g.dim
    st = [[tuple(g.structure[i][j]) + (pi[i][j],) for j in range(n)] + [zero_vector(F, n + 1)]
          for i in range(n)]
    st.append([zero_vector(F, n + 1)] * (n + 1))
    if name is None and g.name:
        name = f"{g.name}+z"
    return LieAlgebra(F, tuple(tuple(r) for r in st), name)


@dataclass(frozen=True)
class AffineCocycleData:
    pi: Matrix
    rho: tuple
    sigma: tuple
    tau: object

    @classmethod
    def zero(cls, F: Field, n: int) -> "AffineCocycleData":
        return cls(Matrix.zeros(F, n, n), zero_vector(F, n), zero_vector(F, n), F.zero)

    def omega(self) -> Callable[[Sequence, Sequence], object]:
        F = self.pi.field

        def w(a, b):
            return _form(self.pi, a, b) + _dot(self.rho, a, F) + _dot(self.sigma, b, F) + self.tau

        return w


def decompose_omega(omega: Callable, F: Field, n: int) -> AffineCocycleData:
    """Recover (pi, rho, sigma, tau) from a bi-affine scalar map."""
    z = zero_vector(F, n)
    E = [unit_vector(F, n, i) for i in range(n)]
    tau = F(omega(z, z))
    rho = tuple(F(omega(e, z)) - tau for e in E)
    sigma = tuple(F(omega(z, e)) - tau for e in E)
    pi = Matrix(F, tuple(tuple(F(omega(E[i], E[j])) - rho[i] - sigma[j] - tau for j in range(n))
                         for i in range(n)), n)
    return AffineCocycleData(pi, rho, sigma, tau)


def deriv_violation(A: LieAffgebra, data: AffineCocycleData) -> tuple[int, int] | None:
    """First basis pair where sigma([a,b]) != pi(a, delta b) + pi(lambda a, b)."""
    g, F = A.fibre, A.field
    E = g.basis()
    delta = A.delta
    for i, j in itertools.product(range(A.dim), repeat=2):
        a, b = E[i], E[j]
        lhs = _dot(data.sigma, g.bracket(a, b), F)
        rhs = _form(data.pi, a, delta.apply(b)) + _form(data.pi, A.lam.apply(a), b)
        if lhs != rhs:
            return (i, j)
    return None


def affine_cocycle_check(A: LieAffgebra, data: AffineCocycleData) -> bool:
    n = A.dim
    if data.pi.shape != (n, n) or len(data.rho) != n or len(data.sigma) != n:
        raise CocycleError(f"cocycle data does not match the {n}-dim affgebra")
    if not is_antisymmetric(data.pi) or not is_two_cocycle(A.fibre, data.pi):
        return False
    return deriv_violation(A, data) is None


def product_bracket(A: LieAffgebra, omega: Callable):
    """{(a, x), (b, y)} = ({a, b}, omega(a, b)) on F^n x F."""
    n = A.dim

    def br(u, v):
        a, b = tuple(u[:n]), tuple(v[:n])
        return A.bracket(a, b) + (A.field(omega(a, b)),)

    return br


def affine_cocycle_axioms(A: LieAffgebra, data: AffineCocycleData,
                          extra_random_points: int = 10, seed: int = 0) -> Report:
    """Antisymmetry and Jacobi for the cocycle extension bracket, evaluated directly."""
    return verify_bracket_axioms(product_bracket(A, data.omega()), A.field, A.dim + 1,
                                 extra_random_points, seed)


def cocycle_extend(A: LieAffgebra, data: AffineCocycleData) -> LieAffgebra:
    """a(g(pi); kappa^, lambda^, s^) isomorphic to the cocycle extension a(omega)."""
    if not affine_cocycle_check(A, data):
        bad = deriv_violation(A, data) if is_antisymmetric(data.pi) else None
        where = f" at basis pair {bad}" if bad else ""
        raise CocycleError(f"not an affine cocycle{where}")
    F, n = A.field, A.dim
    ext = central_extension(A.fibre, data.pi)
    z_row_k = tuple(r + s for r, s in zip(data.rho, data.sigma)) + (F.zero,)
    kap = Matrix(F, tuple(tuple(r) + (F.zero,) for r in A.kappa.rows) + (z_row_k,), n + 1)
    lam = Matrix(F, tuple(tuple(r) + (F.zero,) for r in A.lam.rows)
                 + (tuple(data.sigma) + (F.zero,),), n + 1)
    return LieAffgebra(ext, kap, lam, tuple(A.s) + (F(data.tau),))


@dataclass
class NormalForm:
    result: LieAffgebra
    steps: list  # (Psi, q, source, target) with iso_conditions(source, target, Psi, q)


def _simple_host(A_ext: LieAffgebra) -> str:
    name = A_ext.fibre.name or ""
    base = name[:-2] if name.endswith("+z") else None
    if base not in KNOWN_SIMPLE:
        raise CocycleError(f"fibre {name or '<unnamed>'} is not a central extension of a "
                           f"catalog simple algebra ({', '.join(sorted(KNOWN_SIMPLE))})")
    n = A_ext.dim - 1
    z = unit_vector(A_ext.field, n + 1, n)
    if not adjoint(A_ext.fibre, z).is_zero():
        raise CocycleError("last basis vector is not central")
    return base


def simple_fibre_normal_form(A_ext: LieAffgebra) -> NormalForm:
    """Normal form of a cocycle extension over a simple fibre.

    Removes pi by the automorphism a + x z -> a + (x + f(a)) z with
    f([a,b]) = -pi(a,b), then removes tau (and the inner part of lambda - kappa)
    by a translation.  Each step is certified by iso_conditions.
    """
    _simple_host(A_ext)
    F, N = A_ext.field, A_ext.dim
    n = N - 1
    g_ext = A_ext.fibre
    steps = []
    cur = A_ext
    # step 1: untwist the cocycle
    pi_rows = [(i, j, g_ext.structure[i][j][n]) for i in range(n) for j in range(n)]
    if any(c for _, _, c in pi_rows):
        rows = [tuple(g_ext.structure[i][j][:n]) for i, j, _ in pi_rows]
        sol = solve(Matrix(F, tuple(rows), n), [-c for _, _, c in pi_rows])
        if sol is None:
            raise CocycleError("cocycle is not a coboundary")
        f = sol[0]
        Psi = Matrix(F, tuple(unit_vector(F, N, i) for i in range(n)) + (tuple(f) + (F.one,),), N)
        nxt = transport(cur, Psi, zero_vector(F, N))
        steps.append((Psi, zero_vector(F, N), cur, nxt))
        cur = nxt
    # step 2: translation q = q0 + c z with ad_q0 = lambda - kappa on g, c = rho(q0) - tau
    sigma = cur.lam.rows[n][:n]
    if any(sigma):
        raise CocycleError("sigma must vanish on a perfect fibre")
    kap = Matrix(F, tuple(r[:n] for r in cur.kappa.rows[:n]), n)
    lam = Matrix(F, tuple(r[:n] for r in cur.lam.rows[:n]), n)
    target = (lam - kap).vec()
    basis = [unit_vector(F, N, i) for i in range(n)]
    ads = [Matrix(F, tuple(r[:n] for r in adjoint(cur.fibre, e).rows[:n]), n).vec() for e in basis]
    sol = solve(Matrix(F, tuple(tuple(ads[i][k] for i in range(n)) for k in range(n * n)), n),
                target)
    if sol is None:
        raise CocycleError("lambda - kappa is not inner")
    q0 = tuple(sol[0])
    rho = cur.kappa.rows[n][:n]
    c = _dot(rho, q0, F) - cur.s[n]
    q = q0 + (c,)
    if any(q):
        nxt = transport(cur, Matrix.identity(F, N), q)
        steps.append((Matrix.identity(F, N), q, cur, nxt))
        cur = nxt
    for Psi, qq, src, dst in steps:
        if not iso_conditions(src, dst, Psi, qq):
            raise RuntimeError("normal form step failed certification")
    return NormalForm(cur, steps)
