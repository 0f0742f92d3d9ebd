"""Exact fields and dense linear algebra.

Two kinds of field are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields F_p with p an odd prime
(elements are :class:`Mod`).  Both kinds support the ordinary arithmetic
operators, so the elimination code below is written once, generically.

Matrices act on column vectors; ``m[i][j]`` is the coefficient of ``e_i`` in
the image of ``e_j``.  Vectors are plain tuples of field elements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Mod:
    """Residue class modulo an odd prime, canonical representative 0..p-1."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v * w, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return self * Mod(w, self.p).inverse()

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return self.inverse() * w

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Mod):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field F_p, p odd."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p == 2:
                raise FieldError("characteristic 2 is not supported")
            if not _is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def order(self) -> int | None:
        return self.p

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"

    def __call__(self, x) -> Fraction | Mod:
        """Coerce ints, Fractions, residues or scalar strings into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, Mod):
                raise FieldError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / x.denominator
        if isinstance(x, int):
            return Mod(x, self.p)
        raise FieldError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                q = Fraction(int(num), int(den))
            else:
                q = Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"malformed scalar {text!r}") from exc
        return self(q)

    def format(self, x) -> str:
        x = self(x)
        if self.p is None:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x.v)

    def elements(self) -> Iterator:
        if self.p is None:
            raise FieldError("Q is infinite")
        return (Mod(v, self.p) for v in range(self.p))

    def random(self, rng: random.Random, bound: int = 3):
        """Uniform over F_p; over Q, a small integer in [-bound, bound]."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return Mod(rng.randrange(self.p), self.p)

    def random_vector(self, rng: random.Random, n: int) -> tuple:
        return tuple(self.random(rng) for _ in range(n))

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "Q":
            return cls(None)
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(int(obj["Fp"]))
        raise FieldError(f'field must be "Q" or {{"Fp": p}}, got {obj!r}')


# ---------------------------------------------------------------- vectors

def zero_vector(F: Field, n: int) -> tuple:
    return tuple(F.zero for _ in range(n))


def unit_vector(F: Field, n: int, i: int) -> tuple:
    return tuple(F.one if k == i else F.zero for k in range(n))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def all_vectors(F: Field, n: int) -> Iterator[tuple]:
    return (tuple(t) for t in itertools.product(list(F.elements()), repeat=n))


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple
    ncols: int = dc_field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            object.__setattr__(self, "ncols", len(rows[0]))
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_columns(cls, F: Field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls(F, tuple(() for _ in range(nrows or 0)), 0)
        return cls(F, tuple(zip(*cols)), len(cols))

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, tuple(unit_vector(F, n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, F: Field, r: int, c: int) -> "Matrix":
        return cls(F, tuple(zero_vector(F, c) for _ in range(r)), c)

    @classmethod
    def scalar(cls, F: Field, n: int, c) -> "Matrix":
        return cls.identity(F, n) * F(c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, i):
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tuple(self.columns()), self.nrows)

    def __add__(self, o: "Matrix") -> "Matrix":
        self._same_shape(o)
        return Matrix(self.field, tuple(vadd(a, b) for a, b in zip(self.rows, o.rows)), self.ncols)

    def __sub__(self, o: "Matrix") -> "Matrix":
        self._same_shape(o)
        return Matrix(self.field, tuple(vsub(a, b) for a, b in zip(self.rows, o.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return self * self.field(-1)

    def __mul__(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, tuple(vscale(c, r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, o):
        if isinstance(o, Matrix):
            if self.ncols != o.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {o.shape}")
            cols = o.columns()
            return Matrix(self.field,
                          tuple(tuple(_dot(r, c, self.field) for c in cols) for r in self.rows),
                          o.ncols)
        return self.apply(o)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(_dot(r, v, self.field) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square or k < 0:
            raise ValueError("power of a non-square matrix or negative exponent")
        out = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def vec(self) -> tuple:
        """Row-major flattening; index r*ncols + c."""
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def unvec(cls, F: Field, v: Sequence, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(F, tuple(tuple(v[r * m:(r + 1) * m]) for r in range(n)), m)

    def _same_shape(self, o: "Matrix"):
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {o.shape}")

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"


def _dot(u, v, F: Field):
    acc = F.zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def block_diag_pad(m: Matrix, extra: int) -> Matrix:
    """``m`` extended by ``extra`` zero rows and columns."""
    F = m.field
    rows = [tuple(r) + zero_vector(F, extra) for r in m.rows]
    rows += [zero_vector(F, m.ncols + extra) for _ in range(extra)]
    return Matrix(F, tuple(rows), m.ncols + extra)


# ---------------------------------------------------------------- elimination

def _rref_rows(F: Field, rows: list[list], ncols: int, rhs: list | None = None):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if rhs is not None:
                rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        if rhs is not None:
            rhs[r] = rhs[r] * inv
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if rhs is not None:
                    rhs[i] = rhs[i] - f * rhs[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.rows], m.ncols)
    return Matrix(m.field, tuple(tuple(r) for r in rows), m.ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> "Subspace":
    F = m.field
    rows, pivots = _rref_rows(F, [list(r) for r in m.rows], m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * m.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(tuple(v))
    return Subspace.span(F, m.ncols, basis)


def solve(a: Matrix, b: Sequence) -> tuple[tuple, "Subspace"] | None:
    """Particular solution and homogeneous nullspace of ``a x = b``, or None."""
    if len(b) != a.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {a.nrows} equations")
    F = a.field
    rhs = [F(x) for x in b]
    rows, pivots = _rref_rows(F, [list(r) for r in a.rows], a.ncols, rhs)
    if any(rhs[i] for i in range(len(pivots), len(rows))):
        return None
    x = [F.zero] * a.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rhs[i]
    return tuple(x), nullspace(a)


def invert(m: Matrix) -> Matrix | None:
    if not m.is_square:
        raise ValueError("only square matrices can be inverted")
    n = m.nrows
    F = m.field
    aug = [list(r) + list(unit_vector(F, n, i)) for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(F, aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)):
        return None
    return Matrix(F, tuple(tuple(r[n:]) for r in rows), n)


def det(m: Matrix):
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    F = m.field
    rows = [list(r) for r in m.rows]
    n = len(rows)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d = d * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def general_linear_group(F: Field, n: int) -> Iterator[Matrix]:
    """All invertible n x n matrices over F_p, in lexicographic order of entries."""
    elems = list(F.elements())
    for entries in itertools.product(elems, repeat=n * n):
        m = Matrix.unvec(F, entries, n)
        if det(m):
            yield m


def gl_order(p: int, n: int) -> int:
    out = 1
    for k in range(n):
        out *= p ** n - p ** k
    return out


def random_invertible(F: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(F, tuple(F.random_vector(rng, n) for _ in range(n)), n)
        if det(m):
            return m


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Subspace of F^ambient held by its unique reduced echelon basis."""

    field: Field
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, F: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(F(x) for x in v) for v in vectors]
        if any(len(r) != ambient for r in rows):
            raise ValueError("vector length does not match the ambient dimension")
        if not rows:
            return cls(F, ambient, ())
        red, pivots = _rref_rows(F, rows, ambient)
        return cls(F, ambient, tuple(tuple(r) for r in red[:len(pivots)]))

    @classmethod
    def zero(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, ())

    @classmethod
    def full(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, tuple(unit_vector(F, ambient, i) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of v in the echelon basis, or None when v is outside."""
        v = tuple(self.field(x) for x in v)
        coeffs = tuple(v[p] for p in self.pivots)
        comb = zero_vector(self.field, self.ambient)
        for c, b in zip(coeffs, self.basis):
            if c:
                comb = vadd(comb, vscale(c, b))
        return coeffs if comb == v else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def __le__(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def meet(self, other: "Subspace") -> "Subspace":
        F = self.field
        if not self.basis or not other.basis:
            return Subspace.zero(F, self.ambient)
        # a.U = b.W  <=>  [U^T | -W^T] (a, b) = 0
        cols = list(self.basis) + [vscale(F(-1), w) for w in other.basis]
        kernel = nullspace(Matrix.from_columns(F, cols))
        k = self.dim
        vecs = []
        for sol in kernel.basis:
            v = zero_vector(F, self.ambient)
            for c, u in zip(sol[:k], self.basis):
                if c:
                    v = vadd(v, vscale(c, u))
            vecs.append(v)
        return Subspace.span(F, self.ambient, vecs)

    def __repr__(self):
        return f"Subspace[{self.field}](ambient={self.ambient}, dim={self.dim})"
