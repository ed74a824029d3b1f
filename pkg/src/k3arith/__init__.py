from .padic import PadicInt, WittElem, TruncSeries, coefficient_ring, series_reverse
from .lattice import QuadLattice, standard_lattice, embed_into_selfdual
from .clifford import CliffordAlgebra, projector_pi, filtration_compatibility_check, gspin_membership
from .fcrystal import FCrystal, k3_model_crystal, check_k3_crystal, slope_decompose
from .formalgroup import FormalGroupLaw, fgl_from_log, honda_law, height, lift_with_action

__all__ = [
    "PadicInt",
    "WittElem",
    "TruncSeries",
    "coefficient_ring",
    "series_reverse",
    "QuadLattice",
    "standard_lattice",
    "embed_into_selfdual",
    "CliffordAlgebra",
    "projector_pi",
    "filtration_compatibility_check",
    "gspin_membership",
    "FCrystal",
    "k3_model_crystal",
    "check_k3_crystal",
    "slope_decompose",
    "FormalGroupLaw",
    "fgl_from_log",
    "honda_law",
    "height",
    "lift_with_action",
]

__version__ = "0.1.0"
__description__ = "Exact lattice, Clifford, F-crystal and formal group arithmetic for K3 surfaces."
__project_name__ = "k3arith"  # for Sphinx
