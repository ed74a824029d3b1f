import logging
import math
from fractions import Fraction
from typing import List, NamedTuple

from ..exceptions import KatzConditionError, PrecisionError, PreconditionError
from ..padic.valuation import AtLeast
from ..utils.padic import local_smith, mat_inverse, mat_mul
from .crystal import FCrystal

__all__ = ["SlopeDecomposition", "slope_decompose"]

logger = logging.getLogger(__name__)

# the working precision grows at most this factor over its first estimate
_MAX_WORK_FACTOR = 16


class SlopeDecomposition(NamedTuple):
    """
    The outcome of `slope_decompose`: the sub-crystal of small slopes,
    the quotient, the adapted basis (its first columns span the
    sub-crystal) and the iteration that produced it.
    """

    sub: FCrystal
    quotient: FCrystal
    basis: List[list]
    iterations: int

    def to_dict(self) -> dict:
        R = self.sub.ring
        return {
            "sub": self.sub.to_dict(),
            "quotient": self.quotient.to_dict(),
            "basis": [[R.to_json(x) for x in row] for row in self.basis],
            "iterations": self.iterations,
        }


def _capped(v, m: int) -> int:
    return m if isinstance(v, AtLeast) else min(v, m)


def _separating_basis(C: FCrystal, k: int, lower: Fraction, upper: Fraction):
    """
    Raises the Frobenius to a power F^N at a working precision W until
    the Smith gap between the k-th and the (k+1)-st elementary divisor
    of F^N reaches the precision m of the crystal. N and W start from the
    slopes `lower` and `upper` on either side of the split. Returns the
    ring at precision W, the lifted Frobenius, the transformation U of
    the Smith form and N.
    """
    R = C.ring
    m = R.prec
    N = 1
    while N * (upper - lower) < 2 * m:
        N *= 2
    W = math.ceil(N * lower) + 2 * m
    limit = _MAX_WORK_FACTOR * W
    while W <= limit:
        S = R.with_precision(W)
        F = [[S.from_json(R.to_json(x)) for x in row] for row in C.raw]
        power, M = F, 1
        while M < N:
            power = mat_mul(S, power, power)
            M *= 2
        while M <= limit:
            diag, U, _ = local_smith(S, power)
            # least valuation pivots make the diagonal ascending
            vals = [_capped(S.valuation(x), W) for x in diag]
            gap = vals[k] - vals[k - 1]
            logger.debug("slope decomposition: N=%d, W=%d, gap %d", M, W, gap)
            if gap >= m:
                return S, F, U, M
            if W - vals[k - 1] < 2 * m:
                break
            power = mat_mul(S, power, power)
            M *= 2
        N, W = M, 2 * W
    raise PrecisionError("insufficient precision: the span is not stationary", index=k)


def slope_decompose(C: FCrystal, s) -> SlopeDecomposition:
    """
    Splits off the sub-crystal of the slopes below s.

    The iterates F^N have Smith forms U·F^N·V = D with D ascending. With
    k the number of slopes below s, the first k columns of U^-1 span the
    image of the small slope part modulo p^g, where g is the gap between
    the (k+1)-st and the k-th elementary divisor of F^N. The matrix of
    the crystal is lifted to a working precision W > m and squared until
    g reaches m, W growing whenever the small elementary divisors leave
    no room below it.

    In the adapted basis the lower left block of the Frobenius vanishes
    modulo p^m, which is verified, and both diagonal blocks are returned
    at the precision m of the crystal.

    Parameters
    ----------
    C : FCrystal
        A crystal over W(F_p).
    s : Fraction
        A breakpoint of the Newton polygon.

    Raises
    ------
    PreconditionError
        If the residue degree is not 1 or s does not split the slopes.
    KatzConditionError
        If the breakpoint does not lie on the Hodge polygon.
    PrecisionError
        If the span does not separate within the working precision.

    Examples
    --------
    >>> from k3arith.fcrystal import FCrystal, slope_decompose
    >>> C = FCrystal([[0, 3, 0], [1, 0, 0], [0, 0, 3]], p=3)
    >>> D = slope_decompose(C, 1)
    >>> D.sub.rank, D.sub.prec, D.sub.newton_polygon().as_dict()
    (2, 12, {Fraction(1, 2): 2})
    """
    if C.degree != 1:
        raise PreconditionError("Slope decomposition needs the residue degree 1.")
    s = Fraction(s)
    newton, hodge = C.newton_polygon(), C.hodge_polygon()
    r = C.rank
    k = newton.count_below(s)
    if not 0 < k < r:
        raise PreconditionError("{} does not split the slopes {}.".format(s, newton))
    if newton.ordinate(k) != hodge.ordinate(k):
        raise KatzConditionError(
            "Katz condition fails at {}: Newton {} and Hodge {}".format(
                k, newton.ordinate(k), hodge.ordinate(k)
            ),
            index=k,
        )

    R = C.ring
    m = R.prec
    slopes = newton.slopes
    S, F, U, N = _separating_basis(C, k, slopes[k - 1], slopes[k])
    P = mat_inverse(S, U)
    G = mat_mul(S, mat_mul(S, U, F), P)
    for i in range(k, r):
        for j in range(k):
            if S.reduce(G[i][j], m):
                raise PrecisionError(
                    "insufficient precision: the span is not stable", index=k
                )
    sub = [[S.reduce(G[i][j], m) for j in range(k)] for i in range(k)]
    quotient = [[S.reduce(G[i][j], m) for j in range(k, r)] for i in range(k, r)]
    basis = [[S.reduce(x, m) for x in row] for row in P]
    return SlopeDecomposition(
        FCrystal._from_raw(R, sub), FCrystal._from_raw(R, quotient), basis, N
    )
