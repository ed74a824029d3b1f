import logging
from fractions import Fraction
from typing import Union

import numpy as np
from numpy import ndarray
from linkeddeepdict import LinkedDeepDict

from ..exceptions import PreconditionError
from ..utils.linalg import rational_solve
from .algebra import CliffordAlgebra, CliffordElement

__all__ = ["gspin_membership", "gspin_check", "conjugation_matrix", "cl_inverse"]

logger = logging.getLogger(__name__)


def cl_inverse(g: CliffordElement) -> Union[CliffordElement, None]:
    """
    Returns the inverse of an element, or None if it is not invertible.

    The inverse solves g x = 1 through the dense left multiplication by
    g; in a finite dimensional algebra a right inverse is two-sided.

    Raises
    ------
    DenseRankError
        If the rank exceeds `DENSE_RANK_LIMIT`.
    """
    alg = g.parent
    if g.is_zero():
        return None
    if g.is_scalar():
        return alg.element({0: 1 / g.scalar_part()})
    L = alg.lmul_element_operator(g)
    one = [Fraction(int(S == 0)) for S in range(alg.dim)]
    x = rational_solve(L.to_fractions(), one)
    if x is None:
        return None
    return alg.from_coordinates(x)


def _conjugate(alg: CliffordAlgebra, g, ginv, k: int) -> CliffordElement:
    return g * alg.monomial(1 << k) * ginv


def conjugation_matrix(g: CliffordElement, ginv: CliffordElement = None) -> ndarray:
    """
    Returns the matrix of v -> g v g^-1 on the lattice, column k holding
    the image of the k-th basis vector.

    Raises
    ------
    PreconditionError
        If g is not invertible or does not normalize the lattice.
    """
    alg = g.parent
    ginv = cl_inverse(g) if ginv is None else ginv
    if ginv is None:
        raise PreconditionError("The element is not invertible.")
    n = alg.rank
    out = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
    for k in range(n):
        image = _conjugate(alg, g, ginv, k)
        for S, c in image.raw.items():
            if S == 0 or S & (S - 1):
                raise PreconditionError("The image of v{} leaves the lattice.".format(k))
            out[S.bit_length() - 1, k] = c
    return out


def gspin_check(alg: CliffordAlgebra, g: CliffordElement) -> LinkedDeepDict:
    """
    Decides whether g lies in GSpin(M), the invertible even elements with
    g M g^-1 = M, and reports the reason of a rejection.

    Each basis vector is conjugated and its image has to lie in the span
    of the generators. Conjugation is injective, so the image of M then
    fills M.

    Returns
    -------
    LinkedDeepDict
        The verdict under `member`, a `reason` and, for members, the
        conjugation matrix under `matrix`.

    Raises
    ------
    DenseRankError
        If the rank exceeds `DENSE_RANK_LIMIT`.
    ParentMismatchError
        If g belongs to another algebra.
    """
    alg._check_dense()
    alg._check(g)
    report = LinkedDeepDict({"member": False, "reason": None, "matrix": None})
    if not g.is_even():
        report["reason"] = "not even"
        return report
    ginv = cl_inverse(g)
    if ginv is None:
        report["reason"] = "not invertible"
        return report
    try:
        M = conjugation_matrix(g, ginv)
    except ValueError as e:
        report["reason"] = str(e)
        return report
    report["member"] = True
    report["reason"] = "ok"
    report["matrix"] = [[str(x) for x in row] for row in M]
    logger.debug("GSpin membership at rank %d: %s", alg.rank, report["reason"])
    return report


def gspin_membership(alg: CliffordAlgebra, g: CliffordElement) -> bool:
    """
    Returns True if g is even, invertible and g M g^-1 = M.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice
    >>> from k3arith.clifford import CliffordAlgebra, gspin_membership
    >>> Cl = CliffordAlgebra(standard_lattice("U"))
    >>> gspin_membership(Cl, Cl.one())
    True
    >>> gspin_membership(Cl, Cl.vector([1, 1]))
    False
    """
    return bool(gspin_check(alg, g)["member"])
