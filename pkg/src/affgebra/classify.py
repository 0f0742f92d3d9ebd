"""Isomorphism classes of all affgebras on a small fibre over F_p.

Every structure a(g; kappa, lambda, s) on a fixed fibre g is enumerated and
split into orbits of Aut(g) x F^n, acting by

    kappa' = Psi kappa Psi^-1,  lambda' = Psi (lambda - ad_q) Psi^-1,
    s' = Psi (s + q - kappa q).

Orbits are computed in two stages: first on the pairs (kappa, lambda), then,
for a representative pair, under its stabiliser on s.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass

from .affine import LieAffgebra
from .linalg import Field, Matrix, all_vectors, general_linear_group, invert, vadd, vsub
from .lie import LieAlgebra, adjoint, gen_der_pairs, is_lie_homomorphism, split_pair

STRUCTURE_CAP = 10 ** 6


class EnumerationError(ValueError):
    pass


@dataclass
class IsoClass:
    class_id: int
    size: int
    kappa: Matrix
    lam: Matrix
    s: tuple

    def affgebra(self, g: LieAlgebra) -> LieAffgebra:
        return LieAffgebra(g, self.kappa, self.lam, self.s)


def automorphisms(g: LieAlgebra) -> list[Matrix]:
    return [P for P in general_linear_group(g.field, g.dim) if is_lie_homomorphism(g, g, P)]


def _key(*parts) -> tuple:
    out = []
    for p in parts:
        out.extend(int(x) for x in (p.vec() if isinstance(p, Matrix) else p))
    return tuple(out)


def structure_count(g: LieAlgebra) -> int:
    p = g.field.p
    return p ** gen_der_pairs(g).dim * p ** g.dim


def classify(g: LieAlgebra, cap: int = STRUCTURE_CAP) -> list[IsoClass]:
    F, n = g.field, g.dim
    if not F.is_finite:
        raise EnumerationError("enumeration needs a finite field")
    total = structure_count(g)
    if total > cap:
        raise EnumerationError(f"{total} structures exceed the enumeration cap {cap}")
    space = gen_der_pairs(g)
    auts = [(P, invert(P)) for P in automorphisms(g)]
    qs = list(all_vectors(F, n))
    by_ad: dict[tuple, list] = {}
    for q in qs:
        ad = adjoint(g, q)
        by_ad.setdefault(_key(ad), (ad, []))[1].append(q)
    seen = set()
    classes = []
    for coeffs in all_vectors(F, space.dim):
        v = [F.zero] * (2 * n * n)
        for c, b in zip(coeffs, space.basis):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        kappa, lam = split_pair(g, v)
        key = _key(kappa, lam)
        if key in seen:
            continue
        orbit = set()
        stab = []
        for P, Pi in auts:
            k2 = P @ kappa @ Pi
            for ad, qlist in by_ad.values():
                img = _key(k2, P @ (lam - ad) @ Pi)
                orbit.add(img)
                if img == key:
                    stab.extend((P, q) for q in qlist)
        seen |= orbit
        s_seen = set()
        for s in qs:
            if s in s_seen:
                continue
            s_orbit = {P.apply(vsub(vadd(s, q), kappa.apply(q))) for P, q in stab}
            s_seen |= s_orbit
            classes.append(IsoClass(len(classes), len(orbit) * len(s_orbit), kappa, lam, s))
    if sum(c.size for c in classes) != total:
        raise RuntimeError("class sizes do not add up to the number of structures")
    return classes


def fibre_for(dim: int, p: int, fibre: str = "abelian") -> LieAlgebra:
    from .catalog import abelian, borel
    if dim not in (1, 2):
        raise EnumerationError(f"dim must be 1 or 2, got {dim}")
    if p not in (3, 5):
        raise EnumerationError(f"p must be 3 or 5, got {p}")
    F = Field(p)
    if fibre == "abelian":
        return abelian(dim, F)
    if fibre == "borel":
        if dim != 2:
            raise EnumerationError("the borel fibre is 2-dimensional")
        return borel(F)
    raise EnumerationError(f"unknown fibre {fibre!r}")


def _fmt_matrix(m: Matrix) -> str:
    return ";".join(" ".join(m.field.format(x) for x in r) for r in m.rows)


def classes_csv(classes: list[IsoClass]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class_id", "size", "kappa", "lambda", "s_rep"])
    for c in classes:
        w.writerow([c.class_id, c.size, _fmt_matrix(c.kappa), _fmt_matrix(c.lam),
                    " ".join(c.kappa.field.format(x) for x in c.s)])
    return buf.getvalue()


def one_dim_pattern(classes: list[IsoClass], p: int) -> list[str]:
    """Deviations from the expected dim-1 pattern; empty when it matches.

    kappa != 1: one class per (kappa, lambda), s absorbed (size p).
    kappa == 1: per lambda, the class s = 0 (size 1) and the class s != 0 (size p - 1).
    """
    problems = []
    by_pair: dict[tuple, list[IsoClass]] = {}
    for c in classes:
        by_pair.setdefault((int(c.kappa[0][0]), int(c.lam[0][0])), []).append(c)
    for k, l in itertools.product(range(p), repeat=2):
        got = sorted(c.size for c in by_pair.get((k, l), []))
        want = [p] if k != 1 else [1, p - 1]
        if got != want:
            problems.append(f"(kappa, lambda) = ({k}, {l}): class sizes {got}, expected {want}")
    return problems
