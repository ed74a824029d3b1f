from .valuation import AtLeast, val_p, vp_int, vp_rational, is_certified
from .padicint import PadicRing, PadicInt, padic_ring
from .witt import (
    WittRing,
    WittElem,
    witt_ring,
    coefficient_ring,
    witt_frobenius,
    frobenius_modulus,
    least_irreducible,
)
from .rational import QQ, RationalField
from .series import TruncSeries, series_reverse

__all__ = [
    "AtLeast",
    "val_p",
    "vp_int",
    "vp_rational",
    "is_certified",
    "PadicRing",
    "PadicInt",
    "padic_ring",
    "WittRing",
    "WittElem",
    "witt_ring",
    "coefficient_ring",
    "witt_frobenius",
    "frobenius_modulus",
    "least_irreducible",
    "QQ",
    "RationalField",
    "TruncSeries",
    "series_reverse",
]
