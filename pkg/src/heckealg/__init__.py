"""Hecke algebras of mod-p modular forms via modular symbols.

Computes the local factors of the Hecke algebra acting on spaces of
modular symbols over finite fields, together with their local-algebra
invariants (Gorenstein defect, embedding dimension, nilpotency order,
residue degree), and provides constructors for the eigenform data of
dihedral and icosahedral weight-one forms in positive characteristic.
"""

from .dirichlet import (
    DirichletCharacter, legendre_character, trivial_character, unit_group,
)
from .engine import (
    AlgebraData, EngineOptions, check_torsion_hypotheses, hecke_algebras,
    sturm_bound,
)
from .forms import (
    ModularFormSpec, QuadClassGroup, Quintic, a5_form, a5_trace, class_group,
    dihedral_coefficient, dihedral_forms, predicted_level, prime_class,
)
from .ff import (
    FF, FieldElement, Poly, embed_field, is_irreducible, make_field,
    min_poly_element, poly_factor,
)
from .linalg import (
    AlgebraBasis, BaseChangeTuple, Echelon, Mat, base_change, kernel,
    min_poly_matrix, poly_eval_matrix, primary_components, spin_algebra,
)
from .localalg import (
    AffineTuple, LocalAlgebra, affine_from_tup, affine_tup,
    change_to_residue_field, localisations,
)
from .modsym import (
    ModSymSpace, P1List, boundary_map, build_space, cuspidal_subspace,
    heilbronn_cremona, hecke_operator, merel_family, p1_normalize,
)

__all__ = [
    "AffineTuple", "AlgebraBasis", "AlgebraData", "BaseChangeTuple",
    "DirichletCharacter", "Echelon", "EngineOptions", "FF", "FieldElement",
    "LocalAlgebra", "Mat", "ModSymSpace", "ModularFormSpec", "P1List",
    "Poly", "QuadClassGroup", "Quintic", "a5_form", "a5_trace",
    "affine_from_tup", "affine_tup", "base_change", "boundary_map",
    "build_space", "change_to_residue_field", "check_torsion_hypotheses",
    "class_group", "cuspidal_subspace", "dihedral_coefficient",
    "dihedral_forms", "embed_field", "hecke_algebras", "heilbronn_cremona",
    "hecke_operator", "is_irreducible", "kernel", "legendre_character",
    "localisations", "make_field", "merel_family", "min_poly_element",
    "min_poly_matrix", "p1_normalize", "poly_eval_matrix", "poly_factor",
    "predicted_level", "prime_class", "primary_components", "spin_algebra",
    "sturm_bound", "trivial_character", "unit_group",
]

__version__ = "0.1.0"
