from fractions import Fraction
from math import gcd
from typing import Union

import numpy as np
from numpy import ndarray

from ..exceptions import ParentMismatchError, PreconditionError

__all__ = ["EndOperator", "trace_pair"]

# integer matrices with entries below this bound are kept as int64
_INT64_SAFE = 2**62


def _maxabs(A: ndarray) -> int:
    return int(np.max(np.abs(A))) if A.size else 0


def _exact(A: ndarray, bound: int = None) -> ndarray:
    """
    Returns an int64 array if every entry fits, an object array of Python
    integers otherwise.
    """
    bound = _maxabs(A) if bound is None else bound
    if bound < _INT64_SAFE:
        return A.astype(np.int64)
    return A.astype(object)


class EndOperator:
    """
    A linear map on a Clifford algebra, as a square matrix in the monomial
    basis with rational entries num / den. Column S holds the image of
    the monomial with bitmask S.

    Parameters
    ----------
    matrix : numpy.ndarray
        The integer numerator matrix.
    denominator : int, Optional
        A positive common denominator. Default is 1.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, matrix: ndarray, denominator: int = 1):
        num = np.asarray(matrix)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise PreconditionError("An operator needs a square matrix.")
        den = int(denominator)
        if den <= 0:
            raise PreconditionError("The denominator must be positive.")
        if num.dtype != np.int64:
            num = _exact(num.astype(object))
        g = den
        if g > 1:
            for x in np.unique(num):
                g = gcd(g, int(x))
                if g == 1:
                    break
        if g > 1:
            num = num // g
            den //= g
        self._num = num
        self._den = den

    @classmethod
    def identity(cls, dim: int) -> "EndOperator":
        return cls(np.eye(dim, dtype=np.int64))

    @classmethod
    def zero(cls, dim: int) -> "EndOperator":
        return cls(np.zeros((dim, dim), dtype=np.int64))

    @classmethod
    def from_rational(cls, A: ndarray) -> "EndOperator":
        """Builds an operator from a square array of Fractions."""
        A = np.asarray(A, dtype=object)
        den = 1
        for x in A.flat:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        num = np.empty(A.shape, dtype=object)
        for idx, x in np.ndenumerate(A):
            num[idx] = int(Fraction(x) * den)
        return cls(num, den)

    @property
    def dim(self) -> int:
        return self._num.shape[0]

    @property
    def numerator(self) -> ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def entry(self, row: int, col: int) -> Fraction:
        return Fraction(int(self._num[row, col]), self._den)

    def to_fractions(self) -> ndarray:
        out = np.empty(self._num.shape, dtype=object)
        for idx, x in np.ndenumerate(self._num):
            out[idx] = Fraction(int(x), self._den)
        return out

    def _check(self, other: "EndOperator"):
        if not isinstance(other, EndOperator):
            raise TypeError("Expected an EndOperator.")
        if other.dim != self.dim:
            raise ParentMismatchError("dimension mismatch")

    def __matmul__(self, other: "EndOperator") -> "EndOperator":
        self._check(other)
        A, B = self._num, other._num
        bound = _maxabs(A) * _maxabs(B) * self.dim
        if bound >= _INT64_SAFE:
            A, B = A.astype(object), B.astype(object)
        return EndOperator(A @ B, self._den * other._den)

    def __add__(self, other: "EndOperator") -> "EndOperator":
        self._check(other)
        den = self._den * other._den // gcd(self._den, other._den)
        a, b = den // self._den, den // other._den
        bound = _maxabs(self._num) * a + _maxabs(other._num) * b
        A, B = self._num, other._num
        if bound >= _INT64_SAFE:
            A, B = A.astype(object), B.astype(object)
        return EndOperator(A * a + B * b, den)

    def __neg__(self) -> "EndOperator":
        return EndOperator(-self._num, self._den)

    def __sub__(self, other: "EndOperator") -> "EndOperator":
        return self + (-other)

    def scale(self, c: Union[int, Fraction]) -> "EndOperator":
        c = Fraction(c)
        num = self._num
        if _maxabs(num) * abs(c.numerator) >= _INT64_SAFE:
            num = num.astype(object)
        return EndOperator(num * c.numerator, self._den * c.denominator)

    __mul__ = scale

    def __rmul__(self, c):
        return self.scale(c)

    def trace(self) -> Fraction:
        return Fraction(int(np.trace(self._num.astype(object))), self._den)

    def is_zero(self) -> bool:
        return not np.any(self._num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndOperator) or other.dim != self.dim:
            return NotImplemented
        return self._den == other._den and bool(np.all(self._num == other._num))

    __hash__ = None

    def __repr__(self) -> str:
        return "EndOperator(dim={}, den={})".format(self.dim, self._den)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "matrix": [[str(self.entry(i, j)) for j in range(self.dim)] for i in range(self.dim)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EndOperator":
        return cls.from_rational([[Fraction(x) for x in row] for row in d["matrix"]])


def trace_pair(g1: EndOperator, g2: EndOperator) -> Fraction:
    """
    Returns [g1, g2] = 2^-(n-1) Tr(g1 g2) for operators on a Clifford
    algebra of rank n, of dimension 2^n.

    On left multiplications by lattice vectors it reproduces the
    bilinear form, [i(v), i(w)] = (v, w).

    Examples
    --------
    >>> from k3arith.clifford import EndOperator, trace_pair
    >>> I = EndOperator.identity(4)
    >>> trace_pair(I, I)
    Fraction(2, 1)
    """
    g1._check(g2)
    N = g1.dim
    n = N.bit_length() - 1
    if N != 1 << n:
        raise ParentMismatchError("The dimension is not a power of two.")
    A, B = g1.numerator, g2.numerator
    if _maxabs(A) * _maxabs(B) * N * N >= _INT64_SAFE:
        A, B = A.astype(object), B.astype(object)
    # Tr(AB) = sum_ij A_ij B_ji
    tr = int(np.sum(A * B.T))
    return Fraction(tr * 2, g1.denominator * g2.denominator * N)
