from .lattice import QuadLattice, SublatticeEmbedding
from .standard import standard_lattice, lattice_names, E8_GRAM, U_GRAM
from .ops import (
    direct_sum,
    discriminant,
    signature,
    is_self_dual_at,
    discriminant_group,
    orthogonal_complement,
    embed_into_selfdual,
    elementary_divisors,
    is_primitive,
)
from ..utils.linalg import smith_form

__all__ = [
    "QuadLattice",
    "SublatticeEmbedding",
    "standard_lattice",
    "lattice_names",
    "E8_GRAM",
    "U_GRAM",
    "direct_sum",
    "discriminant",
    "signature",
    "is_self_dual_at",
    "discriminant_group",
    "orthogonal_complement",
    "embed_into_selfdual",
    "elementary_divisors",
    "is_primitive",
    "smith_form",
]
