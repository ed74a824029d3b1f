"""
Rank 22 crystals shaped like the crystalline cohomology of a K3 surface:
an explicit model for every height and a recognizer.
"""
import math
from fractions import Fraction
from typing import Union

from linkeddeepdict import LinkedDeepDict
from sympy import isprime

from ..constants import DEFAULT_PRECISION, K3_RANK, MAX_K3_HEIGHT
from ..exceptions import PreconditionError
from ..padic import coefficient_ring
from ..utils.padic import mat_block_diagonal
from .crystal import FCrystal
from .polygon import Polygon

__all__ = [
    "k3_model_crystal",
    "naive_k3_crystal",
    "check_k3_crystal",
    "k3_newton_polygon",
    "K3_HODGE_POLYGON",
    "SUPERSINGULAR_POLYGON",
]

K3_HODGE_POLYGON = Polygon({0: 1, 1: K3_RANK - 2, 2: 1})
SUPERSINGULAR_POLYGON = Polygon({1: K3_RANK})

Height = Union[int, float, str, None]


def _height(h: Height) -> Union[int, None]:
    """Normalizes a height, None standing for infinity."""
    if h is None or h == math.inf or (isinstance(h, str) and h.lower() in ("inf", "oo", "infinity")):
        return None
    try:
        value = int(h)
    except (TypeError, ValueError):
        raise PreconditionError("Invalid height {!r}.".format(h))
    if value != h or not 1 <= value <= MAX_K3_HEIGHT:
        raise PreconditionError(
            "The height must be between 1 and {} or infinite, got {!r}.".format(MAX_K3_HEIGHT, h)
        )
    return value


def _check_prime(p: int) -> int:
    try:
        value = int(p)
    except (TypeError, ValueError):
        value = 0
    if value != p or not isprime(value):
        raise PreconditionError("{!r} is not a prime.".format(p))
    return value


def k3_newton_polygon(h: Height) -> Polygon:
    """
    Returns the Newton polygon {1 - 1/h: h, 1: 22 - 2h, 1 + 1/h: h} of
    height h, or all slopes 1 for infinite height.
    """
    h = _height(h)
    if h is None:
        return SUPERSINGULAR_POLYGON
    return Polygon({1 - Fraction(1, h): h, 1: K3_RANK - 2 * h, 1 + Fraction(1, h): h})


def _cyclic_block(R, h: int, p: int, corner: int) -> list:
    # F(e_i) = p e_(i+1) for i < h and F(e_h) = corner e_1
    M = [[R.zero] * h for _ in range(h)]
    for i in range(h - 1):
        M[i + 1][i] = R.base_element(p)
    M[0][h - 1] = R.base_element(corner)
    return M


def _companion_block(R, h: int, corner: int) -> list:
    # F(e_i) = e_(i+1) for i < h and F(e_h) = corner e_1
    M = [[R.zero] * h for _ in range(h)]
    for i in range(h - 1):
        M[i + 1][i] = R.one
    M[0][h - 1] = R.base_element(corner)
    return M


def _scalar_block(R, n: int, c: int) -> list:
    return [[R.base_element(c) if i == j else R.zero for j in range(n)] for i in range(n)]


def k3_model_crystal(
    h: Height = None,
    p: int = 2,
    prec: int = DEFAULT_PRECISION,
    hodge_compatible: bool = False,
) -> FCrystal:
    """
    Returns a rank 22 crystal over W(F_p) with the slopes of a K3 surface
    of height h.

    For finite h it is the sum of three blocks:

    * a cyclic block of rank h with F(e_i) = p e_(i+1) and F(e_h) = e_1,
      slope 1 - 1/h and Hodge slopes {0: 1, 1: h - 1},
    * p·Id of rank 22 - 2h,
    * a cyclic block of rank h with F(e_h) = p^2 e_1 instead, slope
      1 + 1/h and Hodge slopes {1: h - 1, 2: 1}.

    The Hodge polygon of the sum is {0: 1, 1: 20, 2: 1}.

    Parameters
    ----------
    h : int, Optional
        The height, between 1 and 10. None, `math.inf` or "inf" give the
        supersingular model. Default is None.
    p : int, Optional
        A prime. Default is 2.
    prec : int, Optional
        The precision. Default is `DEFAULT_PRECISION`.
    hodge_compatible : bool, Optional
        For infinite height, replaces p·Id_22 with
        [[0, p^2], [1, 0]] + p·Id_20, which keeps all slopes 1 and has the
        Hodge polygon of a K3 surface. Default is False.

    Raises
    ------
    PreconditionError
        If h is out of range or p is not a prime.

    Examples
    --------
    >>> from k3arith.fcrystal import k3_model_crystal
    >>> C = k3_model_crystal(3, 5)
    >>> sorted(C.newton_polygon().as_dict().items())
    [(Fraction(2, 3), 3), (Fraction(1, 1), 16), (Fraction(4, 3), 3)]
    """
    h, p = _height(h), _check_prime(p)
    R = coefficient_ring(p, 1, prec)
    if h is None:
        if hodge_compatible:
            blocks = [_companion_block(R, 2, p * p), _scalar_block(R, K3_RANK - 2, p)]
        else:
            blocks = [_scalar_block(R, K3_RANK, p)]
    else:
        blocks = [
            _cyclic_block(R, h, p, 1),
            _scalar_block(R, K3_RANK - 2 * h, p),
            _cyclic_block(R, h, p, p * p),
        ]
    blocks = [b for b in blocks if b]
    return FCrystal._from_raw(R, mat_block_diagonal(R, *blocks))


def naive_k3_crystal(h: int, p: int = 2, prec: int = DEFAULT_PRECISION) -> FCrystal:
    """
    Returns a rank 22 crystal with the Newton polygon of height h built
    from companion blocks of t^h - p^(h-1) and t^h - p^(h+1) around p·Id.

    Its Newton polygon is right but its Hodge polygon is not that of a K3
    surface once h > 1, so `check_k3_crystal` rejects it.
    """
    h, p = _height(h), _check_prime(p)
    if h is None:
        raise PreconditionError("The naive model needs a finite height.")
    R = coefficient_ring(p, 1, prec)
    blocks = [
        _companion_block(R, h, p ** (h - 1)),
        _scalar_block(R, K3_RANK - 2 * h, p),
        _companion_block(R, h, p ** (h + 1)),
    ]
    blocks = [b for b in blocks if b]
    return FCrystal._from_raw(R, mat_block_diagonal(R, *blocks))


def check_k3_crystal(C: FCrystal) -> LinkedDeepDict:
    """
    Recognizes the crystals of K3 shape.

    The verdict is `height` with the height h when the Hodge polygon is
    {0: 1, 1: 20, 2: 1} and the Newton polygon is
    {1 - 1/h: h, 1: 22 - 2h, 1 + 1/h: h}. It is `supersingular` when all
    Newton slopes are 1 and the Hodge polygon is the one of a K3 surface
    or all of its slopes are 1. Everything else is `not-K3-shaped`, with
    the failing condition under `reason`.

    Raises
    ------
    PreconditionError
        If the rank is not 22.
    PrecisionError
        If a polygon cannot be certified.

    Examples
    --------
    >>> from k3arith.fcrystal import k3_model_crystal, check_k3_crystal
    >>> report = check_k3_crystal(k3_model_crystal(4, 3))
    >>> report["verdict"], report["height"]
    ('height', 4)
    """
    if C.rank != K3_RANK:
        raise PreconditionError("Expected a crystal of rank {}, got {}.".format(K3_RANK, C.rank))
    hodge = C.hodge_polygon()
    newton = C.newton_polygon()
    report = LinkedDeepDict(
        {
            "verdict": "not-K3-shaped",
            "height": None,
            "reason": None,
            "newton": newton.to_dict(),
            "hodge": hodge.to_dict(),
        }
    )
    if newton == SUPERSINGULAR_POLYGON and hodge in (K3_HODGE_POLYGON, SUPERSINGULAR_POLYGON):
        report["verdict"] = "supersingular"
        report["height"] = "inf"
        return report
    if hodge != K3_HODGE_POLYGON:
        report["reason"] = "Hodge polygon {} is not {}".format(hodge, K3_HODGE_POLYGON)
        return report
    for h in range(1, MAX_K3_HEIGHT + 1):
        if newton == k3_newton_polygon(h):
            report["verdict"] = "height"
            report["height"] = h
            return report
    report["reason"] = "Newton polygon {} has no K3 shape".format(newton)
    return report
