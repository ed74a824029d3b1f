import logging
from typing import List

from linkeddeepdict import LinkedDeepDict

from ..exceptions import PrecisionError
from ..padic.valuation import AtLeast, is_certified
from ..utils.padic import charpoly, hodge_valuations
from ..utils.polygon import hull_ordinate, lower_hull
from .crystal import FCrystal
from .polygon import Polygon

__all__ = ["newton_polygon", "hodge_polygon", "katz_check"]

logger = logging.getLogger(__name__)


def _partial_sums(values: List[int]) -> List[int]:
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return out


def newton_polygon(C: FCrystal) -> Polygon:
    """
    Returns the Newton polygon of a crystal: the lower convex hull of the
    points (k, v(c_k)) for the characteristic polynomial
    t^r + c_1 t^(r-1) + ... + c_r of the linearized Frobenius, with all
    slopes divided by the residue degree a.

    The entries of F^a are known modulo p^m. Changing them by multiples of
    p^m moves c_k by at least p^(m + H(k-1)), with H(j) the sum of the j
    smallest Hodge valuations of F^a capped at m. The characteristic
    polynomial is therefore computed at precision m + H(r-1) and the
    point of c_k is certified when its valuation lies below m + H(k-1).
    An uncertified point is harmless if its lower bound is on or above
    the hull of the certified ones.

    Raises
    ------
    PrecisionError
        If an uncertified coefficient may lie below the hull, or the
        determinant vanishes at precision m.

    Examples
    --------
    >>> from k3arith.fcrystal import FCrystal, newton_polygon
    >>> newton_polygon(FCrystal([[1, 0, 0], [0, 5, 0], [0, 0, 25]], p=5)).as_dict()
    {Fraction(0, 1): 1, Fraction(1, 1): 1, Fraction(2, 1): 1}
    """
    R = C.ring
    m, r = R.prec, C.rank
    if r == 0:
        return Polygon()
    F = C.linearized()
    hodge = hodge_valuations(R, F)
    H = _partial_sums([v.bound if isinstance(v, AtLeast) else min(v, m) for v in hodge])
    work = m + H[r - 1]
    logger.debug("newton polygon of rank %d at working precision %d", r, work)
    S = R.with_precision(work)
    coeffs = charpoly(S, [[S.from_json(R.to_json(x)) for x in row] for row in F])

    points, pending = [(0, 0)], []
    for k in range(1, r + 1):
        if k == r and all(is_certified(v) for v in hodge):
            # v(det) is read off the Smith form
            points.append((r, sum(hodge)))
            continue
        bound = m + H[k - 1]
        v = S.valuation(coeffs[k])
        if is_certified(v) and v < bound:
            points.append((k, v))
        else:
            pending.append((k, bound))
    if points[-1][0] != r:
        raise PrecisionError("insufficient precision: the determinant vanishes", index=r)
    hull = lower_hull(points)
    for k, bound in pending:
        if bound < hull_ordinate(hull, k):
            raise PrecisionError(
                "insufficient precision at the coefficient of t^{}".format(r - k), index=k
            )
    return Polygon.from_vertices(hull, scale=R.degree)


def hodge_polygon(C: FCrystal) -> Polygon:
    """
    Returns the Hodge polygon of a crystal, with one slope per invariant
    factor of the Frobenius matrix, equal to its valuation.

    Raises
    ------
    PrecisionError
        If an invariant factor vanishes at the precision of the crystal.

    Examples
    --------
    >>> from k3arith.fcrystal import FCrystal, hodge_polygon
    >>> hodge_polygon(FCrystal([[0, 3], [1, 0]], p=3)).as_dict()
    {Fraction(0, 1): 1, Fraction(1, 1): 1}
    """
    vals = hodge_valuations(C.ring, C.raw)
    for i, v in enumerate(vals):
        if isinstance(v, AtLeast):
            raise PrecisionError(
                "insufficient precision: invariant factor {} is {}".format(i, v), index=i
            )
    return Polygon.from_valuations(vals)


def katz_check(C: FCrystal) -> LinkedDeepDict:
    """
    Verifies that the Newton polygon lies on or above the Hodge polygon
    and that both end at the same point.

    Returns
    -------
    LinkedDeepDict
        A report with the two polygons, the `passed` flag and the first
        violating abscissa under `violation`.

    Raises
    ------
    PrecisionError
        If one of the polygons cannot be certified.
    """
    newton, hodge = newton_polygon(C), hodge_polygon(C)
    x = newton.first_violation(hodge)
    endpoints = newton.total == hodge.total
    violation = None
    if x is not None:
        violation = {
            "x": x,
            "newton": str(newton.ordinate(x)),
            "hodge": str(hodge.ordinate(x)),
        }
    return LinkedDeepDict(
        {
            "passed": x is None and endpoints,
            "endpoints_match": endpoints,
            "violation": violation,
            "newton": newton.to_dict(),
            "hodge": hodge.to_dict(),
        }
    )
