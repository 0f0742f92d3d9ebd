"""Exact computations with Lie algebras and Lie affgebras over Q and F_p."""

from .linalg import Field, Matrix, Subspace, invert, nullspace, rref, solve
from .lie import (
    LieAlgebra, centroid, center, derivations, derived_subalgebra, gen_der_pairs, invariants,
    quasicentroid, verify_lie,
)
from .affine import (
    LieAffgebra, aff_bracket, find_isomorphism, is_homomorphism, iso_conditions, new_affgebra,
    simplicity_report, subaffgebra_check, tangent_data, tangent_lie, verify_affine_axioms,
)
from .hull import hull, idempotent_criterion, is_derivation_type, semidirect_by_derivation
from .cocycle import (
    AffineCocycleData, affine_cocycle_axioms, affine_cocycle_check, central_extension,
    cocycle_extend, is_two_cocycle, simple_fibre_normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "Field", "Matrix", "Subspace", "invert", "nullspace", "rref", "solve", "LieAlgebra",
    "centroid", "center", "derivations", "derived_subalgebra", "gen_der_pairs", "invariants",
    "quasicentroid", "verify_lie", "LieAffgebra", "aff_bracket", "find_isomorphism",
    "is_homomorphism", "iso_conditions", "new_affgebra", "simplicity_report", "subaffgebra_check",
    "tangent_data", "tangent_lie", "verify_affine_axioms", "hull", "idempotent_criterion",
    "is_derivation_type", "semidirect_by_derivation", "AffineCocycleData", "affine_cocycle_axioms",
    "affine_cocycle_check", "central_extension", "cocycle_extend", "is_two_cocycle",
    "simple_fibre_normal_form", "__version__",
]
