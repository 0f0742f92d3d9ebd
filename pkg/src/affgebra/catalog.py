"""Named Lie algebras and affgebras used as fixtures and by the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .affine import LieAffgebra, subaffgebra_check, verify_affine_axioms
from .cocycle import central_extension
from .linalg import Field, Matrix, Subspace, invert, unit_vector, zero_vector
from .lie import (
    LieAlgebra, abelian_algebra, center, derived_subalgebra, matrix_coordinates,
    matrix_lie_algebra, verify_lie,
)


def abelian(n: int, F: Field) -> LieAlgebra:
    return abelian_algebra(F, n, f"abelian{n}")


def borel(F: Field) -> LieAlgebra:
    """[e1, e2] = e1."""
    return LieAlgebra.from_brackets(F, 2, {(0, 1): (1, 0)}, "borel")


def sl2(F: Field) -> LieAlgebra:
    """Chevalley basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebra.from_brackets(F, 3, {(0, 1): (-2, 0, 0), (0, 2): (0, 1, 0),
                                           (1, 2): (0, 0, -2)}, "sl2")


def so3(F: Field) -> LieAlgebra:
    """[x_i, x_j] = eps_ijk x_k."""
    return LieAlgebra.from_brackets(F, 3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0),
                                           (0, 2): (0, -1, 0)}, "so3")


def heisenberg(F: Field) -> LieAlgebra:
    """Basis (q, p, z) with [q, p] = z, z central."""
    pi = Matrix(F, ((0, 1), (-1, 0)))
    return central_extension(abelian(2, F), pi, "heisenberg")


def unit_matrix(F: Field, size: int, i: int, j: int) -> Matrix:
    rows = [list(zero_vector(F, size)) for _ in range(size)]
    rows[i][j] = F.one
    return Matrix(F, tuple(tuple(r) for r in rows), size)


def gl_basis(F: Field, n: int) -> list[Matrix]:
    return [unit_matrix(F, n, i, j) for i in range(n) for j in range(n)]


def sl_basis(F: Field, n: int) -> list[Matrix]:
    """E_ij (i != j, row-major) followed by E_ii - E_{i+1,i+1}."""
    off = [unit_matrix(F, n, i, j) for i in range(n) for j in range(n) if i != j]
    diag = [unit_matrix(F, n, i, i) - unit_matrix(F, n, i + 1, i + 1) for i in range(n - 1)]
    return off + diag


def gl(n: int, F: Field) -> LieAlgebra:
    return matrix_lie_algebra(F, gl_basis(F, n), f"gl{n}")


def sl(n: int, F: Field) -> LieAlgebra:
    return matrix_lie_algebra(F, sl_basis(F, n), f"sl{n}")


def a_matrix(F: Field, n: int, i: int, j: int) -> Matrix:
    """A_ij = E_ij - E_{i,n+1} - E_{n+1,j} + E_{n+1,n+1} (0-based i, j < n)."""
    N = n + 1
    return (unit_matrix(F, N, i, j) - unit_matrix(F, N, i, n) - unit_matrix(F, N, n, j)
            + unit_matrix(F, N, n, n))


def gl0_basis(F: Field, n: int) -> list[Matrix]:
    return [a_matrix(F, n, i, j) for i in range(n) for j in range(n)]


def sl0_basis(F: Field, n: int) -> list[Matrix]:
    """Traceless basis of gl0: 2A_ij - A_11 (i != j, row-major), then A_ii - A_{i+1,i+1}.

    tr A_ij = 1 + [i == j], so the off-diagonal A_ij alone are not traceless.
    """
    a11 = a_matrix(F, n, 0, 0)
    off = [a_matrix(F, n, i, j) * 2 - a11 for i in range(n) for j in range(n) if i != j]
    diag = [a_matrix(F, n, i, i) - a_matrix(F, n, i + 1, i + 1) for i in range(n - 1)]
    return off + diag


def gl0(n: int, F: Field) -> LieAlgebra:
    return matrix_lie_algebra(F, gl0_basis(F, n), f"gl0_{n}")


def sl0(n: int, F: Field) -> LieAlgebra:
    return matrix_lie_algebra(F, sl0_basis(F, n), f"sl0_{n}")


def all_ones(F: Field, size: int) -> Matrix:
    return Matrix(F, tuple(tuple(F.one for _ in range(size)) for _ in range(size)), size)


def cyclic_matrix(F: Field, n: int) -> Matrix:
    """E_12 + E_23 + ... + E_{n,n+1} + E_{n+1,1}."""
    N = n + 1
    out = Matrix.zeros(F, N, N)
    for i in range(N):
        out = out + unit_matrix(F, N, i, (i + 1) % N)
    return out


def p_matrix(F: Field, n: int) -> Matrix:
    """First row all ones; row r >= 1 has -1 in column n - r and 1 in the last column."""
    N = n + 1
    rows = [[F.one] * N]
    for r in range(1, N):
        row = [F.zero] * N
        row[n - r] = F(-1)
        row[n] = row[n] + 1
        rows.append(row)
    return Matrix(F, tuple(tuple(r) for r in rows), N)


def p_inverse_displayed(F: Field, n: int) -> Matrix:
    """The inverse as printed: row r < n is all ones except a 0 in column n - r; last row all ones."""
    N = n + 1
    rows = []
    for r in range(n):
        row = [F.one] * N
        row[n - r] = F.zero
        rows.append(row)
    rows.append([F.one] * N)
    return Matrix(F, tuple(tuple(r) for r in rows), N)


def b_displayed(F: Field, n: int) -> Matrix:
    """B as printed: first row -1 except the last entry 0, a subdiagonal of ones
    in the leading n x n block, and 1 in the corner."""
    N = n + 1
    rows = [[F(-1)] * n + [F.zero]]
    for r in range(1, n):
        row = [F.zero] * N
        row[r - 1] = F.one
        rows.append(row)
    last = [F.zero] * N
    last[n] = F.one
    rows.append(last)
    return Matrix(F, tuple(tuple(r) for r in rows), N)


def gna(n: int, F: Field) -> LieAffgebra:
    g = gl0(n, F)
    I = Matrix.identity(F, g.dim)
    return LieAffgebra(g.with_name(f"gl0_{n}"), I, I, zero_vector(F, g.dim))


def sna(n: int, F: Field) -> LieAffgebra:
    """a(sl0; id, id + ad_A, 0) for the cyclic permutation matrix A."""
    g = sl0(n, F)
    A = cyclic_matrix(F, n)
    cols = [matrix_coordinates(g, A @ X - X @ A) for X in g.realization]
    ad_A = Matrix.from_columns(F, cols, g.dim)
    I = Matrix.identity(F, g.dim)
    return LieAffgebra(g, I, I + ad_A, zero_vector(F, g.dim))


def sna_in_sl(n: int, F: Field) -> tuple[LieAffgebra, Subspace, LieAlgebra]:
    """The coset A + sl0 cut out of a(sl(n+1); id, id, 0) as a subaffgebra.

    Returns the subaffgebra (in echelon coordinates of sl0 inside sl(n+1)),
    the subspace and the ambient algebra.
    """
    amb = sl(n + 1, F)
    I = Matrix.identity(F, amb.dim)
    ambient = LieAffgebra(amb, I, I, zero_vector(F, amb.dim))
    h = Subspace.span(F, amb.dim, [matrix_coordinates(amb, X) for X in sl0_basis(F, n)])
    a = matrix_coordinates(amb, cyclic_matrix(F, n))
    return subaffgebra_check(ambient, a, h), h, amb


def action_affgebra(n: int, F: Field, zeta) -> LieAffgebra:
    """{a, b} = (1 - zeta) a + zeta b on the abelian fibre."""
    I = Matrix.identity(F, n)
    return LieAffgebra(abelian(n, F), I, I * F(zeta), zero_vector(F, n))


def _scalar_affgebra(g: LieAlgebra, gamma, s) -> LieAffgebra:
    F = g.field
    G = Matrix.scalar(F, g.dim, gamma)
    return LieAffgebra(g, G, G, tuple(F(x) for x in s))


def one_dim(F: Field, kappa, lam) -> LieAffgebra:
    """First family: {a, b} = (kappa - lambda) a + lambda b."""
    return LieAffgebra(abelian(1, F), Matrix(F, ((kappa,),)), Matrix(F, ((lam,),)), (0,))


def one_dim_unit(F: Field, lam) -> LieAffgebra:
    """Second family: {a, b} = (1 - lambda) a + lambda b + e."""
    return LieAffgebra(abelian(1, F), Matrix(F, ((1,),)), Matrix(F, ((lam,),)), (1,))


FAMILIES: dict[str, tuple[Callable, tuple]] = {
    "one-dim": (lambda F, kappa=0, lam=0: one_dim(F, kappa, lam), ("kappa", "lambda")),
    "one-dim-unit": (lambda F, lam=0: one_dim_unit(F, lam), ("lambda",)),
    "borel": (lambda F, gamma=0, sigma=0: _scalar_affgebra(borel(F), gamma, (0, sigma)),
              ("gamma", "sigma")),
    "borel-e1": (lambda F, gamma=0: _scalar_affgebra(borel(F), gamma, (1, 0)), ("gamma",)),
    "sl2-e": (lambda F, gamma=0: _scalar_affgebra(sl2(F), gamma, (1, 0, 0)), ("gamma",)),
    "sl2-h": (lambda F, gamma=0, sigma=1: _scalar_affgebra(sl2(F), gamma, (0, sigma, 0)),
              ("gamma", "sigma")),
    "sl2-f": (lambda F, gamma=0: _scalar_affgebra(sl2(F), gamma, (0, 0, 1)), ("gamma",)),
    "so3": (lambda F, gamma=0, sigma=0: _scalar_affgebra(so3(F), gamma, (sigma, 0, 0)),
            ("gamma", "sigma")),
}


def classification_family(name: str, F: Field, **params) -> LieAffgebra:
    """Normal-form representatives; parameter names as listed in FAMILIES."""
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    builder, names = FAMILIES[name]
    unknown = set(params) - set(names)
    if unknown:
        raise KeyError(f"family {name} takes {names}, got {sorted(unknown)}")
    kw = {("lam" if k == "lambda" else k): F(v) for k, v in params.items()}
    return builder(F, **kw)


def sl2_swap(F: Field) -> Matrix:
    """Automorphism of sl2 in basis (e, h, f): e <-> f, h -> -h (conjugation by [[0,1],[1,0]])."""
    return Matrix(F, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))


def sl2_unipotent(F: Field, a) -> Matrix:
    """Action on (e, h, f) of conjugation X -> u^-1 X u, u = [[1, a], [0, 1]]."""
    a = F(a)
    # u^-1 e u = e, u^-1 h u = h + 2a e, u^-1 f u = f - a h - a^2 e
    return Matrix.from_columns(F, [(1, 0, 0), (2 * a, 1, 0), (-a * a, -a, 1)], 3)


# ---------------------------------------------------------------- normalised matrices report

@dataclass
class NormalisedReport:
    p: int | None
    n: int
    e_in_derived_gl0: bool
    e_central_sl0: bool
    center_sl0: int
    center_sl: int
    derived_meet_center_gl0: int
    derived_meet_center_gl: int
    not_sln: bool
    not_gln: bool

    def verdicts(self) -> list[str]:
        out = []
        if self.not_sln:
            out.append(f"sna({self.n}) is not isomorphic to a(sl({self.n}); id, id, 0): "
                       f"tangent fibres have centres of dimension {self.center_sl0} and "
                       f"{self.center_sl}")
        if self.not_gln:
            out.append(f"gna({self.n}) is not isomorphic to a(gl({self.n}); id, id, 0): "
                       f"derived algebra meets the centre in dimension "
                       f"{self.derived_meet_center_gl0} versus {self.derived_meet_center_gl}")
        return out


def normalised_report(n: int, F: Field) -> NormalisedReport:
    """Fibre invariants behind the non-isomorphism of gna/sna with gl/sl when char | n+1.

    Non-isomorphic tangent fibres force non-isomorphic affgebras, so each verdict
    holds as soon as the compared invariant differs.
    """
    g0, s0, g, s = gl0(n, F), sl0(n, F), gl(n, F), sl(n, F)
    E = all_ones(F, n + 1)
    e_in_span = _in_matrix_span(g0, E)
    e_der = e_in_span and matrix_coordinates(g0, E) in derived_subalgebra(g0)
    e_central = False
    if _in_matrix_span(s0, E):
        e_central = matrix_coordinates(s0, E) in center(s0)
    zs0, zs = center(s0).dim, center(s).dim
    mg0 = derived_subalgebra(g0).meet(center(g0)).dim
    mg = derived_subalgebra(g).meet(center(g)).dim
    return NormalisedReport(F.p, n, e_der, e_central, zs0, zs, mg0, mg, zs0 != zs, mg0 != mg)


def _in_matrix_span(g: LieAlgebra, m: Matrix) -> bool:
    try:
        matrix_coordinates(g, m)
    except ValueError:
        return False
    return True


def block_form_holds(n: int, F: Field) -> bool:
    """P^-1 X P has zero last row and column and traceless leading block, for X in sl0."""
    P = p_matrix(F, n)
    Pinv = invert(P)
    if Pinv is None:
        return False
    for X in sl0_basis(F, n):
        Y = Pinv @ X @ P
        if any(Y[n]) or any(Y[i][n] for i in range(n)):
            return False
        if sum((Y[i][i] for i in range(n)), F.zero):
            return False
    return True


# ---------------------------------------------------------------- registry

def _field_param(params: dict) -> Field:
    value = params.pop("field", "Q")
    if isinstance(value, Field):
        return value
    value = str(value)
    if value.upper() == "Q":
        return Field()
    return Field(int(value.upper().lstrip("F")))


ALGEBRAS: dict[str, tuple[Callable, tuple]] = {
    "abelian": (lambda F, n=2: abelian(int(n), F), ("n",)),
    "borel": (lambda F: borel(F), ()),
    "sl2": (lambda F: sl2(F), ()),
    "so3": (lambda F: so3(F), ()),
    "heisenberg": (lambda F: heisenberg(F), ()),
    "gl": (lambda F, n=2: gl(int(n), F), ("n",)),
    "sl": (lambda F, n=2: sl(int(n), F), ("n",)),
    "gl0": (lambda F, n=2: gl0(int(n), F), ("n",)),
    "sl0": (lambda F, n=2: sl0(int(n), F), ("n",)),
}

AFFGEBRAS: dict[str, tuple[Callable, tuple]] = {
    "gna": (lambda F, n=2: gna(int(n), F), ("n",)),
    "sna": (lambda F, n=2: sna(int(n), F), ("n",)),
    "action": (lambda F, n=1, zeta=0: action_affgebra(int(n), F, F(zeta)), ("n", "zeta")),
}


def catalog_names() -> list[tuple[str, str, tuple]]:
    out = [(k, "algebra", v[1]) for k, v in ALGEBRAS.items()]
    out += [(k, "affgebra", v[1]) for k, v in AFFGEBRAS.items()]
    out += [(f"family:{k}", "affgebra", v[1]) for k, v in FAMILIES.items()]
    return out


def build(name: str, **params):
    """Build a catalog entry; params are strings or values, ``field`` defaults to Q."""
    params = dict(params)
    F = _field_param(params)
    if name.startswith("family:"):
        return classification_family(name[len("family:"):], F, **params)
    table = ALGEBRAS if name in ALGEBRAS else AFFGEBRAS if name in AFFGEBRAS else None
    if table is None:
        raise KeyError(f"unknown catalog entry {name!r}")
    builder, names = table[name]
    unknown = set(params) - set(names)
    if unknown:
        raise KeyError(f"{name} takes parameters {names}, got {sorted(unknown)}")
    obj = builder(F, **params)
    check = verify_lie(obj) if isinstance(obj, LieAlgebra) else verify_affine_axioms(obj)
    if not check:
        raise RuntimeError(f"catalog entry {name} failed its axiom check")
    return obj


def heisenberg_basis(F: Field):
    q, p, z = (unit_vector(F, 3, i) for i in range(3))
    return q, p, z
