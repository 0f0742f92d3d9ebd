"""Lie algebras given by structure constants, and the linear invariant solvers.

Every solver assembles one linear system in the entries of the unknown
endomorphism(s) and returns its nullspace.  An endomorphism X of an
n-dimensional algebra is flattened row-major, so unknown ``r*n + c`` is
``X[r][c]``, the e_r-coefficient of X(e_c).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import (
    Field, Matrix, Subspace, all_vectors, is_zero_vector, nullspace, unit_vector,
    vadd, vscale, vsub, zero_vector,
)


# algebras the catalog builds and that are simple over every field of characteristic != 2
KNOWN_SIMPLE = frozenset({"sl2", "so3"})


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``structure[i][j] = [e_i, e_j]`` as a coordinate vector."""

    field: Field
    structure: tuple
    name: str | None = None
    realization: tuple | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        F = self.field
        n = len(self.structure)
        st = tuple(tuple(tuple(F(x) for x in self.structure[i][j]) for j in range(n))
                   for i in range(n))
        if any(len(row) != n for row in st) or any(len(v) != n for row in st for v in row):
            raise LieAlgebraError("structure constants must form an n x n x n array")
        object.__setattr__(self, "structure", st)
        # sparse copy used by bracket(): (i, j, k, c) with c = c_ij^k != 0
        terms = tuple((i, j, k, c) for i in range(n) for j in range(n)
                      for k, c in enumerate(st[i][j]) if c)
        object.__setattr__(self, "_terms", terms)

    @property
    def dim(self) -> int:
        return len(self.structure)

    @classmethod
    def from_brackets(cls, F: Field, n: int, brackets: dict, name: str | None = None,
                      realization=None) -> "LieAlgebra":
        """Build from ``{(i, j): vector}`` with i < j; antisymmetry is filled in."""
        st = [[zero_vector(F, n) for _ in range(n)] for _ in range(n)]
        for (i, j), v in brackets.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise LieAlgebraError(f"bad bracket index pair ({i}, {j})")
            v = tuple(F(x) for x in v)
            if len(v) != n:
                raise LieAlgebraError(f"bracket ({i}, {j}) has {len(v)} components, expected {n}")
            st[i][j] = v
            st[j][i] = vscale(F(-1), v)
        return cls(F, tuple(tuple(r) for r in st), name, realization)

    def basis(self) -> list[tuple]:
        return [unit_vector(self.field, self.dim, i) for i in range(self.dim)]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise LieAlgebraError(f"vectors of length {len(x)}, {len(y)} in a {n}-dim algebra")
        out = [self.field.zero] * n
        for i, j, k, c in self._terms:
            if x[i] and y[j]:
                out[k] = out[k] + x[i] * y[j] * c
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self._terms

    def with_name(self, name: str | None) -> "LieAlgebra":
        return LieAlgebra(self.field, self.structure, name, self.realization)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    return g.bracket(x, y)


@dataclass
class LieCheck:
    passed: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def verify_lie(g: LieAlgebra) -> LieCheck:
    """Antisymmetry on basis pairs and Jacobi on basis triples."""
    n = g.dim
    st = g.structure
    for i in range(n):
        for j in range(i, n):
            if vadd(st[i][j], st[j][i]) != zero_vector(g.field, n):
                return LieCheck(False, "antisymmetry", (i, j))
    E = g.basis()
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = E[i], E[j], E[k]
        jac = vadd(vadd(g.bracket(a, g.bracket(b, c)), g.bracket(b, g.bracket(c, a))),
                   g.bracket(c, g.bracket(a, b)))
        if not is_zero_vector(jac):
            return LieCheck(False, "jacobi", (i, j, k))
    return LieCheck(True)


def adjoint(g: LieAlgebra, a: Sequence) -> Matrix:
    return Matrix.from_columns(g.field, [g.bracket(a, e) for e in g.basis()], g.dim)


def _stack(F: Field, blocks: list[Matrix], ncols: int) -> Matrix:
    rows = tuple(r for b in blocks for r in b.rows)
    return Matrix(F, rows, ncols)


def center(g: LieAlgebra) -> Subspace:
    F, n = g.field, g.dim
    # z central <=> [e_i, z] = 0 for all i <=> ad_{e_i} z = 0
    return nullspace(_stack(F, [adjoint(g, e) for e in g.basis()], n))


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    n = g.dim
    return Subspace.span(g.field, n, [g.structure[i][j] for i in range(n) for j in range(i + 1, n)])


def is_subalgebra(g: LieAlgebra, h: Subspace) -> bool:
    return all(g.bracket(u, v) in h for u, v in itertools.combinations(h.basis, 2))


def is_ideal(g: LieAlgebra, h: Subspace) -> bool:
    return all(g.bracket(e, v) in h for e in g.basis() for v in h.basis)


def ideal_closure(g: LieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest ideal containing the given vectors."""
    h = Subspace.span(g.field, g.dim, vectors)
    while True:
        grown = h + Subspace.span(g.field, g.dim,
                                  [g.bracket(e, v) for e in g.basis() for v in h.basis])
        if grown.dim == h.dim:
            return h
        h = grown


def is_lie_homomorphism(g: LieAlgebra, g2: LieAlgebra, psi: Matrix) -> bool:
    E = g.basis()
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if psi.apply(g.bracket(E[i], E[j])) != g2.bracket(psi.column(i), psi.column(j)):
                return False
    return True


# ---------------------------------------------------------------- linear systems
#
# A "form" is a list of n dicts: for each output coordinate k, the
# coefficients of the unknowns.  Forms are added with signs and each output
# coordinate becomes one equation.

def _form_zero(n):
    return [dict() for _ in range(n)]


def _form_add(acc, form, sign=1):
    for k, coeffs in enumerate(form):
        for var, c in coeffs.items():
            acc[k][var] = acc[k].get(var, 0) + sign * c
    return acc


def _unknown_on(g: LieAlgebra, offset: int, v: Sequence):
    """X(v) for the unknown X stored at ``offset``."""
    n = g.dim
    form = _form_zero(n)
    for k in range(n):
        for j in range(n):
            if v[j]:
                form[k][offset + k * n + j] = v[j]
    return form


def _bracket_unknown_left(g: LieAlgebra, offset: int, i: int, b: Sequence):
    """[X(e_i), b] = sum_r X[r][i] [e_r, b]."""
    n = g.dim
    form = _form_zero(n)
    E = g.basis()
    for r in range(n):
        w = g.bracket(E[r], b)
        for k in range(n):
            if w[k]:
                form[k][offset + r * n + i] = w[k]
    return form


def _bracket_unknown_right(g: LieAlgebra, offset: int, a: Sequence, j: int):
    """[a, X(e_j)] = sum_r X[r][j] [a, e_r]."""
    n = g.dim
    form = _form_zero(n)
    E = g.basis()
    for r in range(n):
        w = g.bracket(a, E[r])
        for k in range(n):
            if w[k]:
                form[k][offset + r * n + j] = w[k]
    return form


def _system(g: LieAlgebra, nunknowns: int, equations) -> Matrix:
    F = g.field
    rows = []
    for form in equations:
        for coeffs in form:
            if any(coeffs.values()):
                row = [F.zero] * nunknowns
                for var, c in coeffs.items():
                    row[var] = F(c)
                rows.append(tuple(row))
    return Matrix(F, tuple(rows), nunknowns)


def _pairs(n):
    return itertools.product(range(n), repeat=2)


def maps_of(g: LieAlgebra, space: Subspace) -> list[Matrix]:
    """Basis of a subspace of Lin(g) as matrices."""
    return [Matrix.unvec(g.field, v, g.dim) for v in space.basis]


def lin_subspace(g: LieAlgebra, maps: Sequence[Matrix]) -> Subspace:
    return Subspace.span(g.field, g.dim ** 2, [m.vec() for m in maps])


def derivations(g: LieAlgebra) -> Subspace:
    """D([e_i,e_j]) = [D e_i, e_j] + [e_i, D e_j]."""
    n, E = g.dim, g.basis()
    eqs = []
    for i, j in _pairs(n):
        form = _unknown_on(g, 0, g.structure[i][j])
        _form_add(form, _bracket_unknown_left(g, 0, i, E[j]), -1)
        _form_add(form, _bracket_unknown_right(g, 0, E[i], j), -1)
        eqs.append(form)
    return nullspace(_system(g, n * n, eqs))


def inner_derivations(g: LieAlgebra) -> Subspace:
    return lin_subspace(g, [adjoint(g, e) for e in g.basis()])


def centroid(g: LieAlgebra) -> Subspace:
    """C([e_i,e_j]) = [C e_i, e_j] = [e_i, C e_j]."""
    n, E = g.dim, g.basis()
    eqs = []
    for i, j in _pairs(n):
        eqs.append(_form_add(_unknown_on(g, 0, g.structure[i][j]),
                             _bracket_unknown_left(g, 0, i, E[j]), -1))
        eqs.append(_form_add(_bracket_unknown_left(g, 0, i, E[j]),
                             _bracket_unknown_right(g, 0, E[i], j), -1))
    return nullspace(_system(g, n * n, eqs))


def quasicentroid(g: LieAlgebra) -> Subspace:
    """[K e_i, e_j] = [e_i, K e_j]."""
    n, E = g.dim, g.basis()
    eqs = [_form_add(_bracket_unknown_left(g, 0, i, E[j]),
                     _bracket_unknown_right(g, 0, E[i], j), -1)
           for i, j in _pairs(n)]
    return nullspace(_system(g, n * n, eqs))


def gen_der_pairs(g: LieAlgebra) -> Subspace:
    """Pairs (kappa, lambda), flattened as kappa.vec() + lambda.vec(), with

        lambda([a,b]) = [lambda(a), b] - [a, kappa(b)] + [a, lambda(b)].
    """
    n, E = g.dim, g.basis()
    K, L = 0, n * n
    eqs = []
    for i, j in _pairs(n):
        form = _unknown_on(g, L, g.structure[i][j])
        _form_add(form, _bracket_unknown_left(g, L, i, E[j]), -1)
        _form_add(form, _bracket_unknown_right(g, K, E[i], j), +1)
        _form_add(form, _bracket_unknown_right(g, L, E[i], j), -1)
        eqs.append(form)
    return nullspace(_system(g, 2 * n * n, eqs))


def split_pair(g: LieAlgebra, v: Sequence) -> tuple[Matrix, Matrix]:
    nn = g.dim ** 2
    return Matrix.unvec(g.field, v[:nn], g.dim), Matrix.unvec(g.field, v[nn:], g.dim)


def pair_vector(kappa: Matrix, lam: Matrix) -> tuple:
    return kappa.vec() + lam.vec()


def kl_violation(g: LieAlgebra, kappa: Matrix, lam: Matrix) -> tuple[int, int] | None:
    """First basis pair (i, j) on which the (kappa, lambda) identity fails."""
    E = g.basis()
    for i, j in _pairs(g.dim):
        a, b = E[i], E[j]
        lhs = lam.apply(g.bracket(a, b))
        rhs = vadd(vsub(g.bracket(lam.column(i), b), g.bracket(a, kappa.column(j))),
                   g.bracket(a, lam.column(j)))
        if lhs != rhs:
            return (i, j)
    return None


def is_gen_der_pair(g: LieAlgebra, kappa: Matrix, lam: Matrix) -> bool:
    if kappa.shape != (g.dim, g.dim) or lam.shape != (g.dim, g.dim):
        raise LieAlgebraError("kappa and lambda must be square of the algebra's dimension")
    return kl_violation(g, kappa, lam) is None


def in_lin(g: LieAlgebra, m: Matrix, space: Subspace) -> bool:
    return m.vec() in space


def kappa_power_in_qc(g: LieAlgebra, kappa: Matrix, n_max: int,
                      qc: Subspace | None = None) -> bool:
    qc = quasicentroid(g) if qc is None else qc
    power = kappa
    for _ in range(n_max):
        if power.vec() not in qc:
            return False
        power = power @ kappa
    return True


def kappa_orbit(g: LieAlgebra, kappa: Matrix, a: Sequence, n_max: int | None = None) -> Subspace:
    """Span of a, kappa(a), ..., kappa^n_max(a); n_max defaults to dim g."""
    n_max = g.dim if n_max is None else n_max
    vecs, v = [], tuple(a)
    for _ in range(n_max + 1):
        vecs.append(v)
        v = kappa.apply(v)
    return Subspace.span(g.field, g.dim, vecs)


def is_abelian_subspace(g: LieAlgebra, h: Subspace) -> bool:
    return all(is_zero_vector(g.bracket(u, v)) for u, v in itertools.combinations(h.basis, 2))


def centralizer(g: LieAlgebra, x: Sequence) -> Subspace:
    return nullspace(adjoint(g, x))


@dataclass
class AbelianPairSearch:
    witness: tuple | None
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def abelian_pair_exists(g: LieAlgebra, samples: int = 50, seed: int = 0,
                        exhaustive_limit: int = 4096) -> AbelianPairSearch:
    """Look for linearly independent x, y with [x, y] = 0.

    For each candidate x the centralizer of x is computed exactly, so a
    candidate is settled as soon as it is tried.  Over F_p with p^dim at most
    ``exhaustive_limit`` every x is tried and a negative answer is a proof;
    otherwise candidates are basis vectors, pairwise sums and random vectors.
    """
    F, n = g.field, g.dim
    exhaustive = F.is_finite and F.p ** n <= exhaustive_limit
    if exhaustive:
        candidates = (v for v in all_vectors(F, n) if not is_zero_vector(v))
    else:
        rng = random.Random(seed)
        E = g.basis()
        sums = [vadd(E[i], E[j]) for i in range(n) for j in range(i + 1, n)]
        rand = [F.random_vector(rng, n) for _ in range(samples)]
        candidates = (v for v in itertools.chain(E, sums, rand) if not is_zero_vector(v))
    for x in candidates:
        cent = centralizer(g, x)
        if cent.dim >= 2:
            line = Subspace.span(F, n, [x])
            y = next(b for b in cent.basis if b not in line)
            return AbelianPairSearch((x, y), exhaustive)
    return AbelianPairSearch(None, exhaustive)


def is_scalar_map(m: Matrix) -> bool:
    return m == Matrix.scalar(m.field, m.nrows, m[0][0]) if m.nrows else True


@dataclass(frozen=True)
class Invariants:
    center: int
    derived: int
    der: int
    centroid: int
    qc: int
    gendpairs: int

    def as_dict(self) -> dict:
        return {"center": self.center, "derived": self.derived, "der": self.der,
                "centroid": self.centroid, "qc": self.qc, "gendpairs": self.gendpairs}


def invariants(g: LieAlgebra) -> Invariants:
    return Invariants(center(g).dim, derived_subalgebra(g).dim, derivations(g).dim,
                      centroid(g).dim, quasicentroid(g).dim, gen_der_pairs(g).dim)


def abelian_algebra(F: Field, n: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra.from_brackets(F, n, {}, name or f"abelian{n}")


def matrix_lie_algebra(F: Field, basis: Sequence[Matrix], name: str | None = None) -> LieAlgebra:
    """Structure constants of span(basis) under the commutator, which must close."""
    n = len(basis)
    flat = Subspace.span(F, basis[0].nrows * basis[0].ncols, [b.vec() for b in basis])
    if flat.dim != n:
        raise LieAlgebraError("matrix basis is linearly dependent")
    coords = _coordinate_solver(F, basis)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = basis[i] @ basis[j] - basis[j] @ basis[i]
            brackets[(i, j)] = coords(comm)
    return LieAlgebra.from_brackets(F, n, brackets, name, tuple(basis))


def _coordinate_solver(F: Field, basis: Sequence[Matrix]):
    from .linalg import solve
    a = Matrix.from_columns(F, [b.vec() for b in basis])

    def coords(m: Matrix) -> tuple:
        sol = solve(a, m.vec())
        if sol is None:
            raise LieAlgebraError("matrix is outside the span of the basis")
        return sol[0]

    return coords


def matrix_coordinates(g: LieAlgebra, m: Matrix) -> tuple:
    if g.realization is None:
        raise LieAlgebraError(f"{g.name or 'algebra'} has no matrix realization")
    return _coordinate_solver(g.field, g.realization)(m)


def matrix_of(g: LieAlgebra, v: Sequence) -> Matrix:
    if g.realization is None:
        raise LieAlgebraError(f"{g.name or 'algebra'} has no matrix realization")
    out = Matrix.zeros(g.field, g.realization[0].nrows, g.realization[0].ncols)
    for c, b in zip(v, g.realization):
        if c:
            out = out + b * c
    return out
