from .polygon import Polygon
from .crystal import (
    FCrystal,
    TwistedCrystal,
    tate_twist,
    block_diagonal,
    base_change,
    random_unimodular,
)
from .slopes import newton_polygon, hodge_polygon, katz_check
from .k3 import (
    k3_model_crystal,
    naive_k3_crystal,
    check_k3_crystal,
    k3_newton_polygon,
    K3_HODGE_POLYGON,
    SUPERSINGULAR_POLYGON,
)
from .decompose import SlopeDecomposition, slope_decompose

__all__ = [
    "Polygon",
    "FCrystal",
    "TwistedCrystal",
    "tate_twist",
    "block_diagonal",
    "base_change",
    "random_unimodular",
    "newton_polygon",
    "hodge_polygon",
    "katz_check",
    "k3_model_crystal",
    "naive_k3_crystal",
    "check_k3_crystal",
    "k3_newton_polygon",
    "K3_HODGE_POLYGON",
    "SUPERSINGULAR_POLYGON",
    "SlopeDecomposition",
    "slope_decompose",
]
