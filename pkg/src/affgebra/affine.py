"""Lie affgebras a(g; kappa, lambda, s) in coordinates.

Points are coordinate vectors in F^n.  The heap and affine action are never
stored; they are the ones induced by the vector space, <a,b,c> = a - b + c and
alpha |>_a b = (1 - alpha) a + alpha b.  The bracket is

    {a, b} = [a, b] + kappa(a) + lambda(b - a) + s.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Sequence

from .linalg import (
    Field, Matrix, Subspace, gl_order, general_linear_group, invert, solve, unit_vector, vadd,
    vscale, vsub,
)
from .lie import (
    KNOWN_SIMPLE, LieAlgebra, adjoint, ideal_closure, is_lie_homomorphism, is_subalgebra,
    kl_violation,
)
from .linalg import all_vectors, is_zero_vector

Bracket = Callable[[Sequence, Sequence], tuple]

EXHAUSTIVE_STATE_BOUND = 10 ** 6


class AffgebraError(ValueError):
    pass


class KLViolation(AffgebraError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"(kappa, lambda) violate the generalised-derivation identity "
                         f"on basis pair (e{pair[0]}, e{pair[1]})")


class SubaffgebraError(AffgebraError):
    def __init__(self, condition: str, detail: str):
        self.condition = condition
        super().__init__(f"condition ({condition}) fails: {detail}")


class IsoSearchError(AffgebraError):
    pass


def raw_bracket(g: LieAlgebra, kappa: Matrix, lam: Matrix, s: Sequence) -> Bracket:
    """The bracket formula with no validity check on (kappa, lambda)."""
    F = g.field
    s = tuple(F(x) for x in s)
    n = g.dim
    # {a,b} = [a,b] + (kappa - lambda) a + lambda b + s, with sparse coefficient lists
    first = [(r, j, c) for r, row in enumerate((kappa - lam).rows) for j, c in enumerate(row) if c]
    second = [(r, j, c) for r, row in enumerate(lam.rows) for j, c in enumerate(row) if c]
    terms = g._terms

    def br(a, b):
        if len(a) != n or len(b) != n:
            raise AffgebraError(f"points of length {len(a)}, {len(b)} in a {n}-dim affgebra")
        out = list(s)
        for i, j, k, c in terms:
            if a[i] and b[j]:
                out[k] = out[k] + a[i] * b[j] * c
        for r, j, c in first:
            if a[j]:
                out[r] = out[r] + c * a[j]
        for r, j, c in second:
            if b[j]:
                out[r] = out[r] + c * b[j]
        return tuple(out)

    return br


@dataclass(frozen=True)
class LieAffgebra:
    fibre: LieAlgebra
    kappa: Matrix
    lam: Matrix
    s: tuple
    _bracket: Bracket = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        g = self.fibre
        n = g.dim
        if self.kappa.shape != (n, n) or self.lam.shape != (n, n) or len(self.s) != n:
            raise AffgebraError(f"data dimensions do not match the {n}-dim fibre")
        if self.kappa.field != g.field or self.lam.field != g.field:
            raise AffgebraError("data and fibre are over different fields")
        object.__setattr__(self, "s", tuple(g.field(x) for x in self.s))
        bad = kl_violation(g, self.kappa, self.lam)
        if bad is not None:
            raise KLViolation(bad)
        object.__setattr__(self, "_bracket", raw_bracket(g, self.kappa, self.lam, self.s))

    @property
    def field(self) -> Field:
        return self.fibre.field

    @property
    def dim(self) -> int:
        return self.fibre.dim

    @property
    def delta(self) -> Matrix:
        return self.lam - self.kappa

    def bracket(self, a: Sequence, b: Sequence) -> tuple:
        return self._bracket(a, b)

    def heap(self, a, b, c) -> tuple:
        return vadd(vsub(a, b), c)

    def act(self, alpha, a, b) -> tuple:
        alpha = self.field(alpha)
        return vadd(vscale(1 - alpha, a), vscale(alpha, b))


def new_affgebra(g: LieAlgebra, kappa: Matrix, lam: Matrix, s: Sequence) -> LieAffgebra:
    return LieAffgebra(g, kappa, lam, tuple(s))


def aff_bracket(A: LieAffgebra, a: Sequence, b: Sequence) -> tuple:
    return A.bracket(a, b)


# ---------------------------------------------------------------- axiom checks

@dataclass
class Report:
    passed: bool
    check: str
    mode: str
    seed: int
    points: int = 0
    witness: dict | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self, F: Field | None = None) -> dict:
        out = {"pass": self.passed, "check": self.check, "mode": self.mode, "seed": self.seed,
               "points": self.points}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness, F)
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(obj, F):
    if isinstance(obj, dict):
        return {k: _jsonable(v, F) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, F) for v in obj]
    if isinstance(obj, Matrix):
        return [[obj.field.format(x) for x in r] for r in obj.rows]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int) and F is None:
        return obj
    return F.format(obj) if F is not None else str(obj)


def simplex_lattice(F: Field, nvars: int, degree: int) -> Iterator[tuple]:
    """Integer points with nonnegative coordinates summing to at most ``degree``.

    A polynomial of total degree <= d vanishes identically iff it vanishes on
    this set, provided 0, 1, ..., d are distinct in F.
    """
    for k in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), k):
            v = [0] * nvars
            for i in combo:
                v[i] += 1
            yield tuple(F(x) for x in v)


def _point_tuples(F: Field, n: int, arity: int, degree: int, extra: int,
                  rng: random.Random, exhaustive_limit: int = 20000):
    """Test tuples of points for a polynomial identity of the given degree.

    Returns (mode, iterator).  "complete" when the simplex lattice is
    unisolvent (char 0 or char > degree); "exhaustive" when every tuple over a
    small F_p is enumerated; "randomized" otherwise.  Random tuples are
    always appended.
    """
    N = n * arity

    def split(v):
        return tuple(tuple(v[k * n:(k + 1) * n]) for k in range(arity))

    randoms = [split(F.random_vector(rng, N)) for _ in range(extra)]
    if F.characteristic == 0 or F.characteristic > degree:
        mode, base = "complete", (split(v) for v in simplex_lattice(F, N, degree))
    elif F.p ** N <= exhaustive_limit:
        mode, base = "exhaustive", (split(v) for v in all_vectors(F, N))
    else:
        mode, base = "randomized", (split(v) for v in simplex_lattice(F, N, degree))
    return mode, itertools.chain(base, randoms)


def antisymmetry_residual(br: Bracket, a, b) -> tuple:
    """{a,b} - {a,a} + {b,a} - {b,b}; zero iff affine antisymmetry holds at (a, b)."""
    return vsub(vadd(vsub(br(a, b), br(a, a)), br(b, a)), br(b, b))


def jacobi_residual(br: Bracket, a, b, c) -> tuple:
    """Alternating sum of the six nested brackets of the homogeneous affine Jacobi identity."""
    terms = [br(a, br(b, c)), br(a, br(a, a)), br(b, br(c, a)), br(b, br(b, b)),
             br(c, br(a, b)), br(c, br(c, c))]
    out = terms[0]
    for k, t in enumerate(terms[1:], start=1):
        out = vsub(out, t) if k % 2 else vadd(out, t)
    return out


def verify_bracket_axioms(br: Bracket, F: Field, n: int, extra_random_points: int = 25,
                          seed: int = 0) -> Report:
    """Affine antisymmetry and the homogeneous affine Jacobi identity for a bi-affine bracket."""
    rng = random.Random(seed)
    mode2, pairs = _point_tuples(F, n, 2, 2, extra_random_points, rng)
    count = 0
    for a, b in pairs:
        count += 1
        r = antisymmetry_residual(br, a, b)
        if not is_zero_vector(r):
            return Report(False, "antisymmetry", mode2, seed, count,
                          {"a": a, "b": b, "residual": r})
    mode3, triples = _point_tuples(F, n, 3, 3, extra_random_points, rng)
    for a, b, c in triples:
        count += 1
        r = jacobi_residual(br, a, b, c)
        if not is_zero_vector(r):
            return Report(False, "jacobi", mode3, seed, count,
                          {"a": a, "b": b, "c": c, "residual": r})
    mode = mode3 if mode2 == "complete" else mode2
    return Report(True, "affine-axioms", mode, seed, count)


def verify_affine_axioms(A: LieAffgebra, extra_random_points: int = 25, seed: int = 0) -> Report:
    return verify_bracket_axioms(A.bracket, A.field, A.dim, extra_random_points, seed)


# ---------------------------------------------------------------- tangent data

def tangent_data_of(br: Bracket, F: Field, n: int, o: Sequence) -> tuple[Matrix, Matrix, tuple]:
    """(kappa_o, lambda_o, s_o) read off a black-box bracket, in coordinates shifted to o."""
    o = tuple(F(x) for x in o)
    oo = br(o, o)
    E = [unit_vector(F, n, i) for i in range(n)]
    lam_cols = [vsub(br(o, vadd(o, e)), oo) for e in E]
    kap_cols = [vsub(br(vadd(o, e), vadd(o, e)), oo) for e in E]
    return (Matrix.from_columns(F, kap_cols, n), Matrix.from_columns(F, lam_cols, n),
            vsub(oo, o))


def tangent_lie_of(br: Bracket, F: Field, n: int, o: Sequence, name=None) -> LieAlgebra:
    o = tuple(F(x) for x in o)
    E = [vadd(o, unit_vector(F, n, i)) for i in range(n)]
    oo = br(o, o)
    st = [[vsub(vadd(vsub(br(E[i], E[j]), br(E[i], o)), oo), br(o, E[j])) for j in range(n)]
          for i in range(n)]
    return LieAlgebra(F, tuple(tuple(r) for r in st), name)


def tangent_data(A: LieAffgebra, o: Sequence) -> tuple[Matrix, Matrix, tuple]:
    return tangent_data_of(A.bracket, A.field, A.dim, o)


def tangent_lie(A: LieAffgebra, o: Sequence) -> LieAlgebra:
    return tangent_lie_of(A.bracket, A.field, A.dim, o, A.fibre.name)


def affgebra_at(A: LieAffgebra, o: Sequence) -> LieAffgebra:
    """a(T_o A; kappa_o, lambda_o, s_o), the presentation of A based at o."""
    k, l, s = tangent_data(A, o)
    return LieAffgebra(tangent_lie(A, o), k, l, s)


# ---------------------------------------------------------------- homomorphisms

def is_homomorphism(A: LieAffgebra, A2: LieAffgebra, psi: Matrix, q2: Sequence) -> bool:
    """phi(a) = psi(a) + q2 is a homomorphism A -> A2."""
    if psi.shape != (A2.dim, A.dim):
        raise AffgebraError(f"psi has shape {psi.shape}, expected {(A2.dim, A.dim)}")
    F = A.field
    q2 = tuple(F(x) for x in q2)
    if not is_lie_homomorphism(A.fibre, A2.fibre, psi):
        return False
    if psi @ A.kappa != A2.kappa @ psi:
        return False
    if psi @ A.lam != (adjoint(A2.fibre, q2) + A2.lam) @ psi:
        return False
    return psi.apply(A.s) == vadd(vsub(A2.s, q2), A2.kappa.apply(q2))


def preserves_bracket(A: LieAffgebra, A2: LieAffgebra, psi: Matrix, q2: Sequence,
                      extra_random_points: int = 10, seed: int = 0) -> bool:
    """Direct check of phi({a,b}) = {phi(a), phi(b)}; the identity has degree 2."""
    F = A.field
    q2 = tuple(F(x) for x in q2)

    def phi(a):
        return vadd(psi.apply(a), q2)

    _, pairs = _point_tuples(F, A.dim, 2, 2, extra_random_points, random.Random(seed))
    return all(phi(A.bracket(a, b)) == A2.bracket(phi(a), phi(b)) for a, b in pairs)


def compose_homs(h1: tuple[Matrix, tuple], h2: tuple[Matrix, tuple]) -> tuple[Matrix, tuple]:
    """h2 after h1 for affine maps a -> psi(a) + q."""
    psi1, q1 = h1
    psi2, q2 = h2
    return psi2 @ psi1, vadd(psi2.apply(q1), q2)


def iso_conditions(A: LieAffgebra, A2: LieAffgebra, Psi: Matrix, q: Sequence) -> bool:
    """Isomorphism criterion for Psi (linear part) and q = Psi^{-1}(phi(0))."""
    if Psi.shape != (A.dim, A.dim) or A.dim != A2.dim:
        raise AffgebraError("Psi must be square and the affgebras of equal dimension")
    Pinv = invert(Psi)
    if Pinv is None:
        raise AffgebraError("Psi is singular")
    q = tuple(A.field(x) for x in q)
    if not is_lie_homomorphism(A.fibre, A2.fibre, Psi):
        return False
    if A2.kappa != Psi @ A.kappa @ Pinv:
        return False
    if A2.lam != Psi @ (A.lam - adjoint(A.fibre, q)) @ Pinv:
        return False
    return A2.s == Psi.apply(vsub(vadd(A.s, q), A.kappa.apply(q)))


def transport(A: LieAffgebra, Psi: Matrix, q: Sequence) -> LieAffgebra:
    """The affgebra A' for which (Psi, q) is an isomorphism A -> A'."""
    Pinv = invert(Psi)
    if Pinv is None:
        raise AffgebraError("Psi is singular")
    F, n = A.field, A.dim
    g = A.fibre
    inv_cols = [Pinv.column(i) for i in range(n)]
    st = [[Psi.apply(g.bracket(inv_cols[i], inv_cols[j])) for j in range(n)] for i in range(n)]
    g2 = LieAlgebra(F, tuple(tuple(r) for r in st), g.name)
    q = tuple(F(x) for x in q)
    return LieAffgebra(g2, Psi @ A.kappa @ Pinv, Psi @ (A.lam - adjoint(g, q)) @ Pinv,
                       Psi.apply(vsub(vadd(A.s, q), A.kappa.apply(q))))


@dataclass
class IsoSearch:
    witness: tuple[Matrix, tuple] | None
    mode: str
    seed: int
    tried: int
    states: int | None
    bound_exceeded: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def is_proof(self) -> bool:
        return self.found or self.mode in ("exhaustive", "invariant")

    @property
    def verdict(self) -> str:
        if self.found:
            return "isomorphic"
        if self.mode == "invariant":
            return "no isomorphism (dimension mismatch)"
        if self.mode == "exhaustive":
            return "no isomorphism (exhaustive)"
        note = "; state bound exceeded" if self.bound_exceeded else ""
        return f"no isomorphism found (randomized, {self.tried} maps tried{note}; not a proof)"


def _solve_translation(A: LieAffgebra, A2: LieAffgebra, Psi: Matrix, Pinv: Matrix):
    """q with ad_q = lambda - Psi^-1 lambda' Psi and (1 - kappa) q = Psi^-1 s' - s."""
    F, n = A.field, A.dim
    target_ad = A.lam - Pinv @ A2.lam @ Psi
    ads = [adjoint(A.fibre, e).vec() for e in A.fibre.basis()]
    rows = [tuple(ads[i][k] for i in range(n)) for k in range(n * n)]
    rhs = list(target_ad.vec())
    one_minus_k = Matrix.identity(F, n) - A.kappa
    rows += list(one_minus_k.rows)
    rhs += list(vsub(Pinv.apply(A2.s), A.s))
    sol = solve(Matrix(F, tuple(rows), n), rhs)
    return None if sol is None else sol[0]


def _try_map(A, A2, Psi):
    if not is_lie_homomorphism(A.fibre, A2.fibre, Psi):
        return None
    if A2.kappa @ Psi != Psi @ A.kappa:
        return None
    Pinv = invert(Psi)
    q = _solve_translation(A, A2, Psi, Pinv)
    if q is None:
        return None
    assert iso_conditions(A, A2, Psi, q)
    return Psi, q


def _subalgebra_generated(g: LieAlgebra, vectors) -> Subspace:
    h = Subspace.span(g.field, g.dim, vectors)
    while True:
        nxt = h + Subspace.span(g.field, g.dim, [g.bracket(a, b) for a in h.basis for b in h.basis])
        if nxt.dim == h.dim:
            return h
        h = nxt


def generator_words(g: LieAlgebra) -> tuple[list[int], list, Matrix]:
    """A smallest generating set of basis vectors and bracket words spanning g.

    Words are nested tuples over generator positions.  Returns
    (generators, words, W) where column k of W is the value of words[k] in g.
    """
    n, F = g.dim, g.field
    E = g.basis()
    gens: list[int] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            if _subalgebra_generated(g, [E[i] for i in combo]).dim == n:
                gens = list(combo)
                break
        else:
            continue
        break
    words = [k for k in range(len(gens))]
    values = [E[i] for i in gens]
    span = Subspace.span(F, n, values)
    frontier = list(zip(words, values))
    while span.dim < n and frontier:
        new = []
        for w1, v1 in frontier:
            for k, i in enumerate(gens):
                v = g.bracket(E[i], v1)
                if v not in span:
                    span = span + Subspace.span(F, n, [v])
                    words.append((k, w1))
                    values.append(v)
                    new.append(((k, w1), v))
        frontier = new
    return gens, words, Matrix.from_columns(F, values, n)


def _eval_word(g: LieAlgebra, word, images):
    if isinstance(word, int):
        return images[word]
    k, rest = word
    return g.bracket(images[k], _eval_word(g, rest, images))


def _random_candidate(g: LieAlgebra, g2: LieAlgebra, words, rng) -> Matrix | None:
    """A random linear map determined by random images of the generators."""
    gens, ws, W = words
    F, n = g.field, g.dim
    images = [F.random_vector(rng, n) for _ in gens]
    W2 = Matrix.from_columns(F, [_eval_word(g2, w, images) for w in ws], n)
    Winv = invert(W)
    Psi = W2 @ Winv
    return Psi if invert(Psi) is not None else None


def find_isomorphism(A: LieAffgebra, A2: LieAffgebra, exhaustive: bool | None = None,
                     budget: int = 2000, seed: int = 0,
                     bound: int = EXHAUSTIVE_STATE_BOUND) -> IsoSearch:
    """Search for (Psi, q) satisfying the isomorphism criterion.

    The exhaustive search enumerates GL(n, F_p); for each Psi the translation
    q is the solution of a linear system, so every (Psi, q) in
    GL(n, F_p) x F_p^n is covered.  ``exhaustive=None`` picks exhaustive mode
    whenever |GL(n,p)| * p^n <= bound.  The randomized search draws Psi from
    random images of a generating set of the fibre, so that Lie
    homomorphisms are hit with reasonable probability.
    """
    if A.field != A2.field:
        raise AffgebraError(f"affgebras over different fields ({A.field}, {A2.field})")
    F, n = A.field, A.dim
    if A.dim != A2.dim:
        return IsoSearch(None, "invariant", seed, 0, None)
    states = gl_order(F.p, n) * F.p ** n if F.is_finite else None
    if exhaustive:
        if not F.is_finite:
            raise IsoSearchError("exhaustive search needs a finite field; "
                                 "check a candidate map with iso_conditions instead")
        if states > bound:
            raise IsoSearchError(f"exhaustive search bound exceeded ({states} > {bound} states)")
    use_exhaustive = exhaustive if exhaustive is not None else (
        F.is_finite and states <= bound)
    tried = 0
    if use_exhaustive:
        for Psi in general_linear_group(F, n):
            tried += 1
            hit = _try_map(A, A2, Psi)
            if hit is not None:
                return IsoSearch(hit, "exhaustive", seed, tried, states)
        return IsoSearch(None, "exhaustive", seed, tried, states)
    rng = random.Random(seed)
    words = generator_words(A.fibre)
    for _ in range(budget):
        tried += 1
        Psi = _random_candidate(A.fibre, A2.fibre, words, rng)
        if Psi is None:
            continue
        hit = _try_map(A, A2, Psi)
        if hit is not None:
            return IsoSearch(hit, "randomized", seed, tried, states,
                             bound_exceeded=bool(states and states > bound))
    return IsoSearch(None, "randomized", seed, tried, states,
                     bound_exceeded=bool(states and states > bound))


# ---------------------------------------------------------------- subaffgebras

def subaffgebra_check(A: LieAffgebra, a: Sequence, h: Subspace) -> LieAffgebra:
    """The coset a + h as a Lie affgebra over h, in coordinates of h's echelon basis."""
    F, g = A.field, A.fibre
    a = tuple(F(x) for x in a)
    if not is_subalgebra(g, h):
        raise SubaffgebraError("subalgebra", "h is not closed under the bracket")
    offset = vadd(vsub(A.kappa.apply(a), a), A.s)
    if offset not in h:
        raise SubaffgebraError("a", "kappa(a) - a + s is not in h")
    for b in h.basis:
        if A.kappa.apply(b) not in h:
            raise SubaffgebraError("b", "kappa maps a basis vector of h outside h")
    lam_a = A.lam + adjoint(g, a)
    for b in h.basis:
        if lam_a.apply(b) not in h:
            raise SubaffgebraError("c", "lambda + ad_a maps a basis vector of h outside h")
    m = h.dim
    B = h.basis
    st = [[h.coordinates(g.bracket(B[i], B[j])) for j in range(m)] for i in range(m)]
    sub = LieAlgebra(F, tuple(tuple(r) for r in st), None)
    kap = Matrix.from_columns(F, [h.coordinates(A.kappa.apply(b)) for b in B], m)
    lam = Matrix.from_columns(F, [h.coordinates(lam_a.apply(b)) for b in B], m)
    if m == 0:
        kap = lam = Matrix.zeros(F, 0, 0)
    return LieAffgebra(sub, kap, lam, h.coordinates(offset))


def coset_embedding(a: Sequence, h: Subspace) -> Callable[[Sequence], tuple]:
    """v (h-coordinates) -> a + sum v_i b_i."""
    def emb(v):
        out = tuple(a)
        for c, b in zip(v, h.basis):
            if c:
                out = vadd(out, vscale(c, b))
        return out
    return emb


# ---------------------------------------------------------------- simplicity

@dataclass
class SimplicityReport:
    fibre_simple: bool
    mode: str
    affgebra_simple: bool | None
    proper_ideal: Subspace | None = None

    def to_json(self) -> dict:
        out = {"fibre_simple": self.fibre_simple, "mode": self.mode,
               "affgebra_simple": self.affgebra_simple}
        if self.proper_ideal is not None:
            out["proper_ideal_dim"] = self.proper_ideal.dim
        return out


def simplicity_report(A: LieAffgebra, samples: int = 20, seed: int = 0,
                      exhaustive_limit: int = 4096) -> SimplicityReport:
    """Whether the fibre is simple; a simple fibre makes the affgebra simple.

    A non-simple fibre leaves the affgebra's simplicity undecided (None).
    """
    g, F, n = A.fibre, A.field, A.dim
    if g.is_abelian():
        zero = Subspace.zero(F, n)
        return SimplicityReport(False, "exact", None, zero if n > 1 else None)
    if F.is_finite and F.p ** n <= exhaustive_limit:
        mode = "exhaustive"
        candidates = (v for v in all_vectors(F, n) if not is_zero_vector(v))
    else:
        mode = "catalog" if g.name in KNOWN_SIMPLE else "heuristic"
        rng = random.Random(seed)
        candidates = itertools.chain(g.basis(), (F.random_vector(rng, n) for _ in range(samples)))
    for v in candidates:
        if is_zero_vector(v):
            continue
        ideal = ideal_closure(g, [v])
        if ideal.dim < n:
            return SimplicityReport(False, "exact", None, ideal)
    return SimplicityReport(True, mode, True)
