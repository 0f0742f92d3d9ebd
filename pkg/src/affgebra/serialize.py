"""JSON formats.  All scalars are strings: "a" or "a/b" over Q, "0".."p-1" over F_p."""

from __future__ import annotations

import json
from typing import Any

from .affine import LieAffgebra, Report
from .cocycle import AffineCocycleData
from .hull import HullResult
from .linalg import Field, FieldError, Matrix
from .lie import LieAlgebra


class FormatError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _scalar(F: Field, x, path: str):
    if not isinstance(x, str):
        raise FormatError(path, f"scalar must be a string, got {json.dumps(x)}")
    if F.is_finite:
        t = x.strip()
        if not t.isdigit() or not 0 <= int(t) < F.p:
            raise FormatError(path, f"F_{F.p} element must be an integer 0..{F.p - 1}, got {x!r}")
    try:
        return F.parse(x)
    except FieldError as exc:
        raise FormatError(path, str(exc)) from None


def _vector(F: Field, v, n: int | None, path: str) -> tuple:
    if not isinstance(v, list):
        raise FormatError(path, "expected a list of scalars")
    if n is not None and len(v) != n:
        raise FormatError(path, f"expected {n} entries, got {len(v)}")
    return tuple(_scalar(F, x, f"{path}[{i}]") for i, x in enumerate(v))


def _matrix(F: Field, m, rows: int, cols: int, path: str) -> Matrix:
    if not isinstance(m, list) or len(m) != rows:
        raise FormatError(path, f"expected a list of {rows} rows")
    return Matrix(F, tuple(_vector(F, r, cols, f"{path}[{i}]") for i, r in enumerate(m)), cols)


def _require(obj, key: str, path: str):
    if not isinstance(obj, dict):
        raise FormatError(path, "expected an object")
    if key not in obj:
        raise FormatError(path, f"missing key {key!r}")
    return obj[key]


def fmt_vector(F: Field, v) -> list[str]:
    return [F.format(x) for x in v]


def fmt_matrix(m: Matrix) -> list[list[str]]:
    return [fmt_vector(m.field, r) for r in m.rows]


def field_from_json(obj, path: str = "$.field") -> Field:
    try:
        return Field.from_json(obj)
    except (FieldError, ValueError, TypeError) as exc:
        raise FormatError(path, str(exc)) from None


# ---------------------------------------------------------------- Lie algebras

def lie_to_json(g: LieAlgebra) -> dict:
    F, n = g.field, g.dim
    brackets = [[i, j, fmt_vector(F, g.structure[i][j])]
                for i in range(n) for j in range(i + 1, n) if any(g.structure[i][j])]
    out: dict[str, Any] = {}
    if g.name:
        out["name"] = g.name
    out.update({"field": F.to_json(), "dim": n, "brackets": brackets})
    return out


def lie_from_json(obj, path: str = "$") -> LieAlgebra:
    F = field_from_json(_require(obj, "field", path), f"{path}.field")
    n = _require(obj, "dim", path)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError(f"{path}.dim", "dim must be a nonnegative integer")
    brs = obj.get("brackets", [])
    if not isinstance(brs, list):
        raise FormatError(f"{path}.brackets", "expected a list")
    table = {}
    for k, entry in enumerate(brs):
        p = f"{path}.brackets[{k}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError(p, "expected [i, j, [coefficients]]")
        i, j, v = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise FormatError(p, "indices must be integers")
        if not 0 <= i < j < n:
            raise FormatError(p, f"need 0 <= i < j < {n}, got ({i}, {j})")
        if (i, j) in table:
            raise FormatError(p, f"duplicate pair ({i}, {j})")
        table[(i, j)] = _vector(F, v, n, f"{p}[2]")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError(f"{path}.name", "name must be a string")
    return LieAlgebra.from_brackets(F, n, table, name)


# ---------------------------------------------------------------- affgebras

def affgebra_to_json(A: LieAffgebra) -> dict:
    return {"fibre": lie_to_json(A.fibre), "kappa": fmt_matrix(A.kappa),
            "lambda": fmt_matrix(A.lam), "s": fmt_vector(A.field, A.s)}


def affgebra_data_from_json(obj, path: str = "$") -> tuple[LieAlgebra, Matrix, Matrix, tuple]:
    """Parse without the generalised-derivation check."""
    g = lie_from_json(_require(obj, "fibre", path), f"{path}.fibre")
    F, n = g.field, g.dim
    kap = _matrix(F, _require(obj, "kappa", path), n, n, f"{path}.kappa")
    lam = _matrix(F, _require(obj, "lambda", path), n, n, f"{path}.lambda")
    s = _vector(F, _require(obj, "s", path), n, f"{path}.s")
    return g, kap, lam, s


def affgebra_from_json(obj, path: str = "$") -> LieAffgebra:
    return LieAffgebra(*affgebra_data_from_json(obj, path))


# ---------------------------------------------------------------- other records

def hull_to_json(h: HullResult) -> dict:
    return {"extended": lie_to_json(h.extended), "ambient": affgebra_to_json(h.ambient),
            "offset": fmt_vector(h.extended.field, h.offset)}


def cocycle_to_json(d: AffineCocycleData) -> dict:
    F = d.pi.field
    return {"pi": fmt_matrix(d.pi), "rho": fmt_vector(F, d.rho), "sigma": fmt_vector(F, d.sigma),
            "tau": F.format(d.tau)}


def cocycle_from_json(obj, F: Field, n: int, path: str = "$") -> AffineCocycleData:
    pi = _matrix(F, _require(obj, "pi", path), n, n, f"{path}.pi")
    rho = _vector(F, _require(obj, "rho", path), n, f"{path}.rho")
    sigma = _vector(F, _require(obj, "sigma", path), n, f"{path}.sigma")
    tau = _scalar(F, _require(obj, "tau", path), f"{path}.tau")
    return AffineCocycleData(pi, rho, sigma, tau)


def hom_from_json(obj, F: Field, n_src: int, n_dst: int, path: str = "$") -> tuple[Matrix, tuple]:
    """{"psi": [[...]] (n_dst x n_src), "q": [...]} with q the image of 0."""
    psi = _matrix(F, _require(obj, "psi", path), n_dst, n_src, f"{path}.psi")
    q = _vector(F, _require(obj, "q", path), n_dst, f"{path}.q")
    return psi, q


def vector_from_text(F: Field, text: str, n: int, path: str = "--at") -> tuple:
    """A vector given as a JSON list of scalar strings or as comma-separated scalars."""
    text = text.strip()
    if text.startswith("["):
        try:
            v = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(path, f"malformed JSON at column {exc.colno}: {exc.msg}") from None
        v = [str(x) if isinstance(x, int) else x for x in v]
    else:
        v = [t for t in text.split(",") if t.strip()]
    return _vector(F, v, n, path)


def report_to_json(r: Report, F: Field) -> dict:
    return r.to_json(F)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
