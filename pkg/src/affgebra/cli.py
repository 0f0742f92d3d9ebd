"""Command-line front end.

Exit codes: 0 the property holds or the computation succeeded, 1 the property
fails (a witness is reported), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import serialize as ser
from .affine import (
    AffgebraError, IsoSearchError, KLViolation, LieAffgebra, SubaffgebraError, affgebra_at,
    find_isomorphism, is_homomorphism, raw_bracket, simplicity_report, subaffgebra_check,
    verify_bracket_axioms,
)
from .catalog import build, catalog_names
from .classify import EnumerationError, classes_csv, classify, fibre_for
from .cocycle import CocycleError, cocycle_extend, deriv_violation
from .hull import HullHypothesisError, hull
from .linalg import FieldError, Subspace
from .lie import LieAlgebraError, invariants, kl_violation, verify_lie


class InputError(Exception):
    pass


def _load(path: str):
    name = "<stdin>" if path == "-" else path
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"{name}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def _parse(path: str, fn, *args):
    obj = _load(path)
    try:
        return fn(obj, *args)
    except ser.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (FieldError, LieAlgebraError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _affgebra(path: str) -> LieAffgebra:
    g, k, l, s = _parse(path, ser.affgebra_data_from_json)
    try:
        return LieAffgebra(g, k, l, s)
    except KLViolation as exc:
        raise InputError(f"{path}: $.kappa/$.lambda: {exc}") from None


def _same_field(paths, objs):
    fields = {str(o.field) for o in objs}
    if len(fields) > 1:
        desc = ", ".join(f"{p} over {o.field}" for p, o in zip(paths, objs))
        raise InputError(f"field mismatch between inputs: {desc}")


def _seed(text: str | None) -> int:
    if text is None:
        text = os.environ.get("AFFGEBRA_SEED", "0")
    try:
        seed = int(text)
    except ValueError:
        raise InputError(f"--seed: expected an unsigned integer, got {text!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise InputError(f"--seed: {seed} is outside 0..2^64-1")
    return seed


class Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, obj: dict, text: str):
        if self.as_json:
            print(json.dumps(obj, separators=(",", ":")), file=self.stream)
        else:
            print(text, file=self.stream)

    def data(self, obj):
        print(ser.dumps(obj), file=self.stream)


# ---------------------------------------------------------------- verbs

def cmd_verify(args, out: Out) -> int:
    g = _parse(args.file, ser.lie_from_json)
    res = verify_lie(g)
    obj = {"pass": res.passed}
    if not res.passed:
        obj["axiom"] = res.axiom
        obj["witness"] = list(res.witness)
    out.emit(obj, "Lie algebra axioms hold" if res.passed
             else f"{res.axiom} fails on basis indices {res.witness}")
    return 0 if res.passed else 1


def cmd_invariants(args, out: Out) -> int:
    g = _parse(args.file, ser.lie_from_json)
    if not verify_lie(g):
        raise InputError(f"{args.file}: not a Lie algebra")
    inv = invariants(g).as_dict()
    out.emit(inv, "\n".join(f"{k:10s} {v}" for k, v in inv.items()))
    return 0


def cmd_affgebra_verify(args, out: Out) -> int:
    seed = _seed(args.seed)
    g, k, l, s = _parse(args.file, ser.affgebra_data_from_json)
    rep = verify_bracket_axioms(raw_bracket(g, k, l, s), g.field, g.dim, args.points, seed)
    bad = kl_violation(g, k, l)
    obj = rep.to_json(g.field)
    obj["kl_violation"] = list(bad) if bad else None
    if rep.passed:
        text = f"affine axioms hold ({rep.mode}, {rep.points} point tuples, seed {seed})"
    else:
        w = rep.witness
        pts = ", ".join(f"{name}={ser.fmt_vector(g.field, w[name])}" for name in "abc" if name in w)
        text = (f"{rep.check} fails at {pts}; residual {ser.fmt_vector(g.field, w['residual'])}"
                f" ({rep.mode}, seed {seed})")
    if bad:
        text += f"\n(kappa, lambda) violate the generalised-derivation identity on pair {bad}"
    out.emit(obj, text)
    return 0 if rep.passed else 1


def cmd_tangent(args, out: Out) -> int:
    A = _affgebra(args.file)
    o = _vec(A, args.at or ",".join("0" * A.dim))
    out.data(ser.affgebra_to_json(affgebra_at(A, o)))
    return 0


def _vec(A, text):
    try:
        return ser.vector_from_text(A.field, text, A.dim)
    except ser.FormatError as exc:
        raise InputError(str(exc)) from None


def cmd_hom_check(args, out: Out) -> int:
    A, B = _affgebra(args.source), _affgebra(args.target)
    _same_field([args.source, args.target], [A, B])
    psi, q = _parse(args.hom, ser.hom_from_json, A.field, A.dim, B.dim)
    ok = is_homomorphism(A, B, psi, q)
    out.emit({"pass": ok}, "is a homomorphism" if ok else "not a homomorphism")
    return 0 if ok else 1


def cmd_iso(args, out: Out) -> int:
    A, B = _affgebra(args.first), _affgebra(args.second)
    _same_field([args.first, args.second], [A, B])
    seed = _seed(args.seed)
    try:
        res = find_isomorphism(A, B, exhaustive=True if args.exhaustive else None,
                               budget=args.budget, seed=seed)
    except IsoSearchError as exc:
        raise InputError(str(exc)) from None
    obj = {"pass": res.found, "mode": res.mode, "seed": seed, "tried": res.tried,
           "verdict": res.verdict}
    if res.states is not None:
        obj["states"] = res.states
    if res.bound_exceeded:
        obj["bound_exceeded"] = True
    text = res.verdict
    if res.found:
        Psi, q = res.witness
        obj["witness"] = {"Psi": ser.fmt_matrix(Psi), "q": ser.fmt_vector(A.field, q)}
        text += f"\nPsi = {obj['witness']['Psi']}\nq = {obj['witness']['q']}"
    out.emit(obj, text)
    return 0 if res.found else 1


def cmd_sub(args, out: Out) -> int:
    A = _affgebra(args.file)
    doc = _load(args.subspace)
    try:
        a = ser._vector(A.field, ser._require(doc, "a", "$"), A.dim, "$.a")
        basis = ser._require(doc, "basis", "$")
        if not isinstance(basis, list):
            raise ser.FormatError("$.basis", "expected a list of vectors")
        vecs = [ser._vector(A.field, v, A.dim, f"$.basis[{i}]") for i, v in enumerate(basis)]
    except ser.FormatError as exc:
        raise InputError(f"{args.subspace}: {exc}") from None
    h = Subspace.span(A.field, A.dim, vecs)
    try:
        sub = subaffgebra_check(A, a, h)
    except SubaffgebraError as exc:
        out.emit({"pass": False, "condition": exc.condition, "message": str(exc)}, str(exc))
        return 1
    obj = {"pass": True, "basis": [ser.fmt_vector(A.field, b) for b in h.basis],
           "affgebra": ser.affgebra_to_json(sub)}
    out.emit(obj, ser.dumps(obj))
    return 0


def cmd_hull(args, out: Out) -> int:
    A = _affgebra(args.file)
    try:
        h = hull(A, seed=_seed(args.seed))
    except HullHypothesisError as exc:
        out.emit({"pass": False, "message": str(exc)}, str(exc))
        return 1
    out.data(ser.hull_to_json(h))
    return 0


def cmd_extend(args, out: Out) -> int:
    A = _affgebra(args.file)
    data = _parse(args.cocycle, ser.cocycle_from_json, A.field, A.dim)
    try:
        ext = cocycle_extend(A, data)
    except CocycleError as exc:
        obj = {"pass": False, "message": str(exc)}
        try:
            bad = deriv_violation(A, data)
        except AffgebraError:
            bad = None
        if bad:
            obj["witness"] = list(bad)
        out.emit(obj, str(exc))
        return 1
    out.data(ser.affgebra_to_json(ext))
    return 0


def cmd_simple(args, out: Out) -> int:
    A = _affgebra(args.file)
    rep = simplicity_report(A, seed=_seed(args.seed))
    obj = rep.to_json()
    if rep.affgebra_simple:
        text = f"fibre simple ({rep.mode}); hence the affgebra is simple"
    else:
        text = "fibre not simple; simplicity of the affgebra is not decided"
    out.emit(obj, text)
    return 0 if rep.fibre_simple else 1


def cmd_catalog(args, out: Out) -> int:
    if args.action == "list":
        rows = catalog_names()
        out.emit({"entries": [{"name": n, "kind": k, "params": list(p)} for n, k, p in rows]},
                 "\n".join(f"{n:18s} {k:9s} {' '.join(p) + ' ' if p else ''}field" for n, k, p in rows))
        return 0
    if not args.name:
        raise InputError("catalog emit needs an entry name")
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise InputError(f"--param: expected k=v, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    try:
        obj = build(args.name, **params)
    except (KeyError, ValueError) as exc:
        raise InputError(f"catalog: {exc.args[0] if exc.args else exc}") from None
    if isinstance(obj, LieAffgebra):
        out.data(ser.affgebra_to_json(obj))
    else:
        out.data(ser.lie_to_json(obj))
    return 0


def cmd_enumerate(args, out: Out) -> int:
    try:
        g = fibre_for(args.dim, args.p, args.fibre)
        classes = classify(g)
    except EnumerationError as exc:
        raise InputError(str(exc)) from None
    text = classes_csv(classes)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"{len(classes)} classes written to {args.out}", file=sys.stderr)
    else:
        out.stream.write(text)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="affgebra", description="Exact computations with Lie "
                                 "algebras and Lie affgebras given by structure constants.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--json", action="store_true", help="machine-readable report")
        return p

    p = verb("verify", cmd_verify, "check antisymmetry and Jacobi of a Lie algebra")
    p.add_argument("file")
    p = verb("invariants", cmd_invariants, "dimensions of centre, derived algebra, Der, C, QC, pairs")
    p.add_argument("file")
    p = verb("affgebra-verify", cmd_affgebra_verify, "check the affine axioms of raw data")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--points", type=int, default=25, help="extra random point tuples")
    p = verb("tangent", cmd_tangent, "data of the affgebra based at a point")
    p.add_argument("file")
    p.add_argument("--at", help="base point, e.g. 1,0,2 or [\"1\",\"0\",\"2\"]")
    p = verb("hom-check", cmd_hom_check, "check an affine map psi(a) + q")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("hom", help='JSON {"psi": [[...]], "q": [...]}')
    p = verb("iso", cmd_iso, "search for an isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed")
    p.add_argument("--budget", type=int, default=2000)
    p = verb("sub", cmd_sub, "check a coset a + h")
    p.add_argument("file")
    p.add_argument("subspace", help='JSON {"a": [...], "basis": [[...], ...]}')
    p = verb("hull", cmd_hull, "Lie hull of an affgebra with scalar kappa")
    p.add_argument("file")
    p.add_argument("--seed")
    p = verb("extend", cmd_extend, "cocycle extension")
    p.add_argument("file")
    p.add_argument("cocycle", help='JSON {"pi", "rho", "sigma", "tau"}')
    p = verb("simple", cmd_simple, "simplicity report")
    p.add_argument("file")
    p.add_argument("--seed")
    p = verb("catalog", cmd_catalog, "list or emit catalog entries")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append", metavar="k=v")
    p = verb("enumerate", cmd_enumerate, "isomorphism classes over F_p")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--fibre", choices=["abelian", "borel"], default="abelian")
    p.add_argument("--out")
    return ap


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Out(args.json, stdout)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
