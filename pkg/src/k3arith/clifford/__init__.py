from .operator import EndOperator, trace_pair
from .algebra import CliffordAlgebra, CliffordElement, cl_mul
from .projector import CanonicalProjector, projector_pi, hyperbolic_basis, find_isotropic
from .filtration import (
    Filtration,
    isotropic_filtration,
    filtration_compatibility_check,
    structural_filtration_dimension,
    adapted_basis,
)
from .gspin import gspin_membership, gspin_check, conjugation_matrix, cl_inverse

__all__ = [
    "EndOperator",
    "trace_pair",
    "CliffordAlgebra",
    "CliffordElement",
    "cl_mul",
    "CanonicalProjector",
    "projector_pi",
    "hyperbolic_basis",
    "find_isotropic",
    "Filtration",
    "isotropic_filtration",
    "filtration_compatibility_check",
    "structural_filtration_dimension",
    "adapted_basis",
    "gspin_membership",
    "gspin_check",
    "conjugation_matrix",
    "cl_inverse",
]
