from fractions import Fraction
from functools import reduce
from itertools import combinations, islice, product
from math import gcd, isqrt
from typing import List, Tuple

import numpy as np
from numpy import ndarray

from ..exceptions import DegenerateFormError, NoHyperbolicPairError
from ..padic.valuation import vp_rational
from ..utils.linalg import (
    as_rational_matrix,
    congruence_diagonalize,
    rational_inverse,
    rational_nullspace,
)
from .algebra import CliffordAlgebra
from .operator import EndOperator, trace_pair

__all__ = ["CanonicalProjector", "projector_pi", "hyperbolic_basis", "find_isotropic"]

# bounds of the isotropic vector search in an orthogonal basis
_TERNARY_BOUND = 24
_SMALL_BOUND = 3
_MAX_SUBSETS = 256


def _form(G: ndarray, v, w) -> Fraction:
    return sum(
        (Fraction(v[i]) * G[i, j] * Fraction(w[j]) for i in range(len(v)) for j in range(len(w))),
        Fraction(0),
    )


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _isotropic_in_plane(G: ndarray, u, w):
    """
    Returns a nonzero isotropic vector a u + b w if the binary form on
    span(u, w) represents zero over the rationals.
    """
    A, B, C = _form(G, u, u), _form(G, u, w), _form(G, w, w)
    if A == 0:
        return list(u)
    if C == 0:
        return list(w)
    # A a^2 + 2 B a + C = 0 with b = 1
    r = _rational_sqrt(B * B - A * C)
    if r is None:
        return None
    a = (-B + r) / A
    return [a * x + y for x, y in zip(u, w)]


def _diagonal_zero(d: List[int], bound: int):
    """
    Returns a nonzero integer solution of sum_i d_i x_i^2 = 0 with
    |x_i| <= bound for i > 0, solved for x_0, or None.
    """
    a, rest = d[0], d[1:]
    for xs in product(range(-bound, bound + 1), repeat=len(rest)):
        if not any(xs):
            continue
        s = -sum(c * x * x for c, x in zip(rest, xs))
        if s % a or s // a < 0:
            continue
        r = isqrt(s // a)
        if r * r == s // a:
            g = reduce(gcd, xs, r)
            return [r // g] + [x // g for x in xs]
    return None


def _isotropic_in_diagonal(d: List[Fraction], rows: List[list]):
    """
    Searches isotropic vectors of the diagonal form diag(d) in the span
    of 3, 4 or 5 of the given rows, trying index sets on which the form
    is indefinite. Ternary searches go up to the Holzer bound.
    """
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in d), 1)
    c = [int(x * den) for x in d]
    n = len(c)
    for k, bound in ((3, None), (4, _SMALL_BOUND), (5, _SMALL_BOUND)):
        subsets = (
            idx
            for idx in combinations(range(n), k)
            if min(c[i] for i in idx) < 0 < max(c[i] for i in idx)
        )
        for idx in islice(subsets, _MAX_SUBSETS):
            sub = [c[i] for i in idx]
            if bound is None:
                top = max(abs(a * b) for a, b in combinations(sub, 2))
                B = min(isqrt(top) + 1, _TERNARY_BOUND)
            else:
                B = bound
            x = _diagonal_zero(sub, B)
            if x is not None:
                return [
                    sum((xi * rows[i][j] for xi, i in zip(x, idx)), Fraction(0))
                    for j in range(len(rows[0]))
                ]
    return None


def find_isotropic(G) -> List[Fraction]:
    """
    Searches a nonzero rational isotropic vector: among the basis vectors,
    then in the planes spanned by two basis vectors, then in the planes
    of an orthogonal basis, and last in the spans of 3 to 5 vectors of
    the orthogonal basis, where the diagonal form is solved by a bounded
    search.

    Raises
    ------
    NoHyperbolicPairError
        If the search fails.

    Examples
    --------
    >>> from k3arith.clifford import find_isotropic
    >>> G = [[2, 0, 0], [0, 2, 0], [0, 0, -4]]
    >>> e = find_isotropic(G)
    >>> sum(G[i][i] * e[i] ** 2 for i in range(3)), any(e)
    (Fraction(0, 1), True)
    """
    G = as_rational_matrix(G)
    n = G.shape[0]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        if G[i, i] == 0:
            return basis[i]
    d, T = congruence_diagonalize(G)
    rows = [list(row) for row in T]
    for vectors in (basis, rows):
        for i in range(n):
            for j in range(i + 1, n):
                e = _isotropic_in_plane(G, vectors[i], vectors[j])
                if e is not None and any(e):
                    return e
    e = _isotropic_in_diagonal(d, rows)
    if e is not None:
        return e
    raise NoHyperbolicPairError()


def hyperbolic_basis(G) -> Tuple[list, list, List[list]]:
    """
    Returns e, f with (e, e) = (f, f) = 0, (e, f) = 1, and an orthogonal
    basis of their orthogonal complement, all in rational coordinates.
    """
    G = as_rational_matrix(G)
    n = G.shape[0]
    e = find_isotropic(G)
    Ge = G.dot(np.array(e, dtype=object))
    j = next((j for j in range(n) if Ge[j] != 0), None)
    if j is None:
        raise DegenerateFormError()
    f0 = [Fraction(int(i == j)) / Ge[j] for i in range(n)]
    qf0 = _form(G, f0, f0) / 2
    f = [x - qf0 * y for x, y in zip(f0, e)]
    Gf = G.dot(np.array(f, dtype=object))
    K = rational_nullspace([list(Ge), list(Gf)], ncols=n)
    rest = []
    if len(K):
        H = K.dot(G).dot(K.T)
        diag, T = congruence_diagonalize(H)
        if any(d == 0 for d in diag):
            raise DegenerateFormError()
        rest = [list(row) for row in T.dot(K)]
    return e, f, rest


class CanonicalProjector:
    """
    The idempotent π on End(Cl) with image i(M) whose kernel is the
    orthogonal complement of i(M) for the trace pairing.

    It is evaluated lazily, one operator at a time, with the dual basis
    formula π(g) = Σ_j c_j i(w_j), where c = G^-1 t and t_j = [g, i(w_j)]
    for the lattice basis w_j with Gram matrix G.

    Parameters
    ----------
    alg : CliffordAlgebra
        The algebra, of a nondegenerate lattice.
    factor : int, Optional
        A scalar applied to every output. Default is 1.
    """

    def __init__(self, alg: CliffordAlgebra, factor: int = 1):
        self._alg = alg
        self._factor = factor
        try:
            self._ginv = rational_inverse(alg.lattice.gram)
        except ZeroDivisionError as e:
            raise DegenerateFormError() from e
        self._basis_ops = None

    @property
    def algebra(self) -> CliffordAlgebra:
        return self._alg

    @property
    def factor(self) -> int:
        return self._factor

    def _ops(self) -> List[EndOperator]:
        if self._basis_ops is None:
            n = self._alg.rank
            self._basis_ops = [
                self._alg.lmul_operator([int(i == j) for j in range(n)]) for i in range(n)
            ]
        return self._basis_ops

    def pairings(self, g: EndOperator) -> ndarray:
        """Returns t_j = [g, i(w_j)] for the lattice basis."""
        return np.array([trace_pair(g, op) for op in self._ops()], dtype=object)

    def coefficients(self, g: EndOperator) -> ndarray:
        """
        Returns the coordinates of the lattice vector v with π(g) = i(v).
        """
        t = self.pairings(g)
        c = self._ginv.dot(t) if len(t) else t
        return np.array([Fraction(x) * self._factor for x in c], dtype=object)

    def __call__(self, g: EndOperator) -> EndOperator:
        return self._alg.lmul_operator(self.coefficients(g))

    def hyperbolic(self, g: EndOperator) -> EndOperator:
        """
        Evaluates π(g) = [g, i(f)] i(e) + [g, i(e)] i(f)
        + Σ_j [g, i(v_j)] i(v_j) / (v_j, v_j) with a hyperbolic pair e, f
        and an orthogonal basis v_j of its complement.

        Raises
        ------
        NoHyperbolicPairError
            If no isotropic vector is found.
        """
        G = self._alg.lattice.gram
        e, f, rest = hyperbolic_basis(G)
        t = self.pairings(g)

        def pair(v):
            return sum((Fraction(x) * y for x, y in zip(v, t)), Fraction(0))

        c = [pair(f) * x + pair(e) * y for x, y in zip(e, f)]
        for v in rest:
            beta = 1 / _form(as_rational_matrix(G), v, v)
            pv = pair(v) * beta
            c = [x + pv * y for x, y in zip(c, v)]
        return self._alg.lmul_operator([x * self._factor for x in c])

    def integrality_exponent(self, p: int) -> int:
        """
        Returns the least k >= 0 such that p^k π maps integral operators
        (integer matrices in the monomial basis) to integral ones.

        Integral operators pair with i(w_j) to every vector of
        2^-(n-1) Z^n, and i(v) is integral exactly for integral v, so the
        exponent is read off the entries of G^-1 / 2^(n-1).
        """
        n = self._alg.rank
        scale = Fraction(1, 2 ** (n - 1)) if n else Fraction(2)
        vals = [vp_rational(x * scale, p) for x in self._ginv.flat if x != 0]
        return max([0] + [-v for v in vals])

    def scaled(self, p: int) -> "CanonicalProjector":
        """Returns π' = p^k π with k the integrality exponent at p."""
        return CanonicalProjector(self._alg, p ** self.integrality_exponent(p))


def projector_pi(alg: CliffordAlgebra) -> CanonicalProjector:
    """
    Returns the canonical projector of End(Cl) onto i(M).

    Raises
    ------
    DegenerateFormError
        If the lattice is degenerate.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice
    >>> from k3arith.clifford import CliffordAlgebra, EndOperator, projector_pi
    >>> Cl = CliffordAlgebra(standard_lattice("U"))
    >>> pi = projector_pi(Cl)
    >>> pi(EndOperator.identity(Cl.dim)).is_zero()
    True
    """
    return CanonicalProjector(alg)
