from fractions import Fraction
from typing import Iterable, List, Tuple

import numpy as np
from numpy import ndarray
from sympy import ZZ, Matrix, QQ as SQQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import (
    hermite_normal_form,
    invariant_factors,
    smith_normal_decomp,
)

__all__ = [
    "as_int_matrix",
    "as_rational_matrix",
    "identity_matrix",
    "smith_form",
    "elementary_divisors",
    "hermite_rows",
    "integer_kernel",
    "integer_det",
    "congruence_diagonalize",
    "to_domain_matrix",
    "to_integer_domain_matrix",
    "from_domain_matrix",
    "rational_inverse",
    "rational_rank",
    "rational_rref",
    "rational_nullspace",
    "rational_solve",
]


def _shape(M) -> Tuple[int, int]:
    if isinstance(M, ndarray) and M.ndim == 2:
        return M.shape
    n = len(M)
    return n, (len(M[0]) if n else 0)


def as_int_matrix(M, ncols: int = None) -> ndarray:
    """
    Returns a copy of a matrix-like object as a 2d numpy array of
    Python integers (dtype object), so entries never overflow.
    """
    n, m = _shape(M)
    if n == 0 and ncols is not None:
        m = ncols
    A = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            A[i, j] = int(M[i][j])
    return A


def as_rational_matrix(M, ncols: int = None) -> ndarray:
    """
    Returns a copy of a matrix-like object as a 2d numpy array of
    `Fraction` instances.
    """
    n, m = _shape(M)
    if n == 0 and ncols is not None:
        m = ncols
    A = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            A[i, j] = Fraction(M[i][j])
    return A


def identity_matrix(n: int, one=1) -> ndarray:
    A = np.empty((n, n), dtype=object)
    A[:, :] = 0 * one
    for i in range(n):
        A[i, i] = one
    return A


def _swap_rows(A: ndarray, i: int, j: int):
    if i != j:
        A[[i, j]] = A[[j, i]]


def _swap_cols(A: ndarray, i: int, j: int):
    if i != j:
        A[:, [i, j]] = A[:, [j, i]]


def to_integer_domain_matrix(M, ncols: int = None) -> DomainMatrix:
    """
    Returns a sympy `DomainMatrix` over ZZ from a matrix of integers.
    """
    A = as_int_matrix(M, ncols)
    n, m = A.shape
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in A], (n, m), ZZ)


def _from_integer_domain_matrix(D: DomainMatrix) -> ndarray:
    n, m = D.shape
    A = np.empty((n, m), dtype=object)
    for i, row in enumerate(D.to_Matrix().tolist()):
        for j, x in enumerate(row):
            A[i, j] = int(x)
    return A


def smith_form(M) -> Tuple[ndarray, ndarray, ndarray]:
    """
    Returns the Smith normal form of an integer matrix together with
    unimodular transformations.

    Parameters
    ----------
    M : Iterable
        An n x m integer matrix.

    Returns
    -------
    D : numpy.ndarray
        A diagonal n x m matrix with nonnegative entries, each dividing
        the next one, zeros last.
    U : numpy.ndarray
        A unimodular n x n matrix.
    V : numpy.ndarray
        A unimodular m x m matrix with U @ M @ V == D.

    Examples
    --------
    >>> from k3arith.utils.linalg import smith_form
    >>> D, U, V = smith_form([[2, 4], [6, 8]])
    >>> [D[0, 0], D[1, 1]]
    [2, 4]
    """
    A = as_int_matrix(M)
    n, m = A.shape
    if 0 in (n, m):
        return A, identity_matrix(n), identity_matrix(m)
    D, U, V = smith_normal_decomp(to_integer_domain_matrix(A))
    D, U, V = map(_from_integer_domain_matrix, (D, U, V))
    for i in range(min(n, m)):
        if D[i, i] < 0:
            D[i] = -D[i]
            U[i] = -U[i]
    return D, U, V


def elementary_divisors(M) -> List[int]:
    """
    Returns the nonzero invariant factors of an integer matrix.
    """
    A = as_int_matrix(M)
    if 0 in A.shape:
        return []
    return [abs(int(d)) for d in invariant_factors(to_integer_domain_matrix(A)) if d]


def hermite_rows(M) -> ndarray:
    """
    Returns a basis of the row lattice of an integer matrix in Hermite
    normal form, as rows. The result only depends on the row lattice.
    """
    A = as_int_matrix(M)
    n, m = A.shape
    if n == 0 or not A.any():
        return np.empty((0, m), dtype=object)
    # the columns of the HNF of A^t span the row lattice of A
    H = hermite_normal_form(to_integer_domain_matrix(A.T))
    return _from_integer_domain_matrix(H).T.copy()


def integer_kernel(M, ncols: int = None) -> ndarray:
    """
    Returns a basis, as rows in Hermite normal form, of the saturated
    lattice {v in Z^m : M v = 0}.
    """
    A = as_int_matrix(M, ncols)
    n, m = A.shape
    if n == 0:
        return identity_matrix(m)
    D, _, V = smith_form(A)
    r = sum(1 for i in range(min(n, m)) if D[i, i] != 0)
    if r == m:
        return np.empty((0, m), dtype=object)
    return hermite_rows(V[:, r:].T)


def integer_det(M) -> int:
    """
    Returns the determinant of a square integer matrix, computed by
    fraction-free Bareiss elimination.
    """
    A = as_int_matrix(M)
    n, m = A.shape
    if n != m:
        raise ValueError("The matrix must be square.")
    if n == 0:
        return 1
    return int(Matrix(n, n, lambda i, j: A[i, j]).det(method="bareiss"))


def congruence_diagonalize(G) -> Tuple[List[Fraction], ndarray]:
    """
    Diagonalizes a symmetric rational matrix by congruence.

    Returns the diagonal entries d and an invertible rational matrix T
    with T @ G @ T.T == diag(d). Zero pivots are handled by swapping in
    a nonzero diagonal entry, or by adding a row with a nonzero
    off-diagonal entry, which turns a hyperbolic plane into a pair of
    opposite squares.

    Examples
    --------
    >>> from k3arith.utils.linalg import congruence_diagonalize
    >>> d, T = congruence_diagonalize([[0, 1], [1, 0]])
    >>> sorted(x > 0 for x in d)
    [False, True]
    """
    A = as_rational_matrix(G)
    n = A.shape[0]
    T = identity_matrix(n, Fraction(1))
    for k in range(n):
        if A[k, k] == 0:
            j = next((j for j in range(k + 1, n) if A[j, j] != 0), None)
            if j is not None:
                _swap_rows(A, k, j)
                _swap_cols(A, k, j)
                _swap_rows(T, k, j)
            else:
                j = next((j for j in range(k + 1, n) if A[k, j] != 0), None)
                if j is None:
                    continue
                A[k] = A[k] + A[j]
                A[:, k] = A[:, k] + A[:, j]
                T[k] = T[k] + T[j]
        piv = A[k, k]
        for i in range(k + 1, n):
            c = A[i, k] / piv
            if c:
                A[i] = A[i] - c * A[k]
                A[:, i] = A[:, i] - c * A[:, k]
                T[i] = T[i] - c * T[k]
    return [A[i, i] for i in range(n)], T


def to_domain_matrix(M, ncols: int = None) -> DomainMatrix:
    """
    Returns a sympy `DomainMatrix` over QQ from a matrix of integers or
    fractions.
    """
    n, m = _shape(M)
    if n == 0 and ncols is not None:
        m = ncols
    rows = []
    for i in range(n):
        row = []
        for j in range(m):
            x = Fraction(M[i][j])
            row.append(SQQ(x.numerator, x.denominator))
        rows.append(row)
    return DomainMatrix(rows, (n, m), SQQ)


def from_domain_matrix(D: DomainMatrix) -> ndarray:
    n, m = D.shape
    A = np.empty((n, m), dtype=object)
    for i, row in enumerate(D.to_list()):
        for j, x in enumerate(row):
            A[i, j] = Fraction(int(x.numerator), int(x.denominator))
    return A


def rational_inverse(M) -> ndarray:
    """
    Returns the inverse of a nonsingular rational matrix as Fractions.
    Raises `ZeroDivisionError` for singular input.
    """
    D = to_domain_matrix(M)
    if D.shape[0] == 0:
        return np.empty((0, 0), dtype=object)
    try:
        return from_domain_matrix(D.inv())
    except Exception as e:
        raise ZeroDivisionError("The matrix is singular.") from e


def rational_rank(M, ncols: int = None) -> int:
    D = to_domain_matrix(M, ncols)
    if 0 in D.shape:
        return 0
    return D.rank()


def rational_rref(M, ncols: int = None) -> Tuple[ndarray, Tuple[int, ...]]:
    """
    Returns the reduced row echelon form and the pivot columns.
    """
    D = to_domain_matrix(M, ncols)
    if 0 in D.shape:
        return from_domain_matrix(D), ()
    R, pivots = D.rref()
    return from_domain_matrix(R), tuple(pivots)


def rational_nullspace(M, ncols: int = None) -> ndarray:
    """
    Returns a basis of {v : M v = 0} over the rationals, as rows.
    """
    D = to_domain_matrix(M, ncols)
    n, m = D.shape
    if n == 0:
        return identity_matrix(m, Fraction(1))
    if m == 0:
        return np.empty((0, 0), dtype=object)
    return from_domain_matrix(D.nullspace())


def rational_solve(M, rhs: Iterable) -> ndarray:
    """
    Returns one rational solution x of M x = rhs, or None if the system
    is inconsistent.
    """
    A = as_rational_matrix(M)
    n, m = A.shape
    b = [Fraction(x) for x in rhs]
    aug = np.empty((n, m + 1), dtype=object)
    aug[:, :m] = A
    aug[:, m] = b
    R, pivots = rational_rref(aug, m + 1)
    if m in pivots:
        return None
    x = np.array([Fraction(0)] * m, dtype=object)
    for row, col in enumerate(pivots):
        x[col] = R[row, m]
    return x
