"""
Matrix routines over the truncated coefficient rings.

Matrices are lists of rows of raw ring elements (integers for
`PadicRing`, coordinate tuples for `WittRing`). Every function takes the
ring as its first argument and never mutates its input.
"""
from typing import List, Sequence, Tuple

from ..padic.valuation import AtLeast

__all__ = [
    "mat_identity",
    "mat_copy",
    "mat_mul",
    "mat_frobenius",
    "mat_convert",
    "mat_is_zero",
    "mat_inverse",
    "mat_block_diagonal",
    "charpoly",
    "local_smith",
    "hodge_valuations",
]

RawMatrix = List[list]


def mat_identity(R, n: int) -> RawMatrix:
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def mat_copy(A: Sequence[Sequence]) -> RawMatrix:
    return [list(row) for row in A]


def mat_mul(R, A: RawMatrix, B: RawMatrix) -> RawMatrix:
    n = len(A)
    k = len(B)
    m = len(B[0]) if k else 0
    add, mul, zero, is_zero = R.add, R.mul, R.zero, R.is_zero
    out = []
    for i in range(n):
        Ai = A[i]
        row = [zero] * m
        for l in range(k):
            a = Ai[l]
            if is_zero(a):
                continue
            Bl = B[l]
            for j in range(m):
                b = Bl[j]
                if not is_zero(b):
                    row[j] = add(row[j], mul(a, b))
        out.append(row)
    return out


def mat_frobenius(R, A: RawMatrix, k: int = 1) -> RawMatrix:
    """Applies σ^k entrywise."""
    return [[R.frobenius(x, k) for x in row] for row in A]


def mat_convert(src, dst, A: RawMatrix) -> RawMatrix:
    """Moves a matrix between rings of the same prime and degree."""
    return [[dst.convert(src.element(x)) for x in row] for row in A]


def mat_is_zero(R, A: RawMatrix) -> bool:
    return all(R.is_zero(x) for row in A for x in row)


def mat_block_diagonal(R, *blocks: RawMatrix) -> RawMatrix:
    n = sum(len(b) for b in blocks)
    out = [[R.zero] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return out


def mat_inverse(R, A: RawMatrix) -> RawMatrix:
    """
    Returns the inverse of a matrix over the ring by Gauss-Jordan
    elimination with unit pivots. Raises `ZeroDivisionError` if the
    matrix is not invertible over the ring.
    """
    n = len(A)
    M = mat_copy(A)
    inv = mat_identity(R, n)
    for c in range(n):
        r = next((r for r in range(c, n) if R.is_unit(M[r][c])), None)
        if r is None:
            raise ZeroDivisionError("The matrix is not invertible.")
        M[c], M[r] = M[r], M[c]
        inv[c], inv[r] = inv[r], inv[c]
        u = R.inverse(M[c][c])
        M[c] = [R.mul(u, x) for x in M[c]]
        inv[c] = [R.mul(u, x) for x in inv[c]]
        for i in range(n):
            if i != c and not R.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[c])]
                inv[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(inv[i], inv[c])]
    return inv


def charpoly(R, A: RawMatrix) -> list:
    """
    Returns the coefficients of det(t·I - A) by Berkowitz's
    division-free algorithm, leading coefficient first: the k-th entry
    multiplies t^(n-k).
    """
    n = len(A)
    add, sub, mul, neg, zero = R.add, R.sub, R.mul, R.neg, R.zero
    coeffs = [R.one]
    for r in range(n):
        a = A[r][r]
        # Toeplitz column [1, -a, -R c, -R S c, ..., -R S^(r-1) c]
        col = [R.one, neg(a)]
        v = [A[i][r] for i in range(r)]
        for _ in range(r):
            s = zero
            for j in range(r):
                s = add(s, mul(A[r][j], v[j]))
            col.append(neg(s))
            v = [
                _dot(R, A[i][:r], v)
                for i in range(r)
            ]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - len(col) + 1), min(i, r) + 1):
                s = add(s, mul(col[i - j], coeffs[j]))
            new.append(s)
        coeffs = new
    return coeffs


def _dot(R, u, v):
    add, mul = R.add, R.mul
    s = R.zero
    for x, y in zip(u, v):
        s = add(s, mul(x, y))
    return s


def local_smith(R, A: RawMatrix) -> Tuple[list, RawMatrix, RawMatrix]:
    """
    Smith normal form over the truncated local ring.

    Returns the diagonal entries and invertible transformations U, V
    with U·A·V diagonal. The pivot in each step is an entry of least
    valuation, so every elimination is exact.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    M = mat_copy(A)
    U = mat_identity(R, n)
    V = mat_identity(R, m)
    for t in range(min(n, m)):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                x = M[i][j]
                if R.is_zero(x):
                    continue
                v = R.valuation(x)
                if best is None or v < best[0]:
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        w, i, j = best
        M[t], M[i] = M[i], M[t]
        U[t], U[i] = U[i], U[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
        u_inv = R.inverse(R.divide_by_p(M[t][t], w))
        for i in range(t + 1, n):
            x = M[i][t]
            if R.is_zero(x):
                continue
            q = R.mul(R.divide_by_p(x, w), u_inv)
            M[i] = [R.sub(y, R.mul(q, z)) for y, z in zip(M[i], M[t])]
            U[i] = [R.sub(y, R.mul(q, z)) for y, z in zip(U[i], U[t])]
        for j in range(t + 1, m):
            x = M[t][j]
            if R.is_zero(x):
                continue
            q = R.mul(R.divide_by_p(x, w), u_inv)
            for row in M:
                row[j] = R.sub(row[j], R.mul(q, row[t]))
            for row in V:
                row[j] = R.sub(row[j], R.mul(q, row[t]))
    diag = [M[i][i] for i in range(min(n, m))]
    return diag, U, V


def hodge_valuations(R, A: RawMatrix) -> list:
    """
    Returns the valuations of the invariant factors of a square matrix in
    ascending order, `AtLeast(m)` for factors that vanish at precision m.
    """
    diag, _, _ = local_smith(R, A)
    vals = [R.valuation(x) for x in diag]
    known = sorted(v for v in vals if not isinstance(v, AtLeast))
    return known + [v for v in vals if isinstance(v, AtLeast)]
