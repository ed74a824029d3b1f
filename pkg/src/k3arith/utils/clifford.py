from numba import njit
import numpy as np
from numpy import ndarray

__cache = True

__all__ = [
    "lowest_bit",
    "popcount",
    "lmul_matrix",
    "reversal_signs",
    "parity_signs",
    "first_generator_image",
]


@njit(nogil=True, cache=__cache)
def lowest_bit(S: int) -> int:
    i = 0
    while not (S >> i) & 1:
        i += 1
    return i


@njit(nogil=True, cache=__cache)
def popcount(S: int) -> int:
    c = 0
    while S:
        S &= S - 1
        c += 1
    return c


@njit(nogil=True, cache=__cache)
def lmul_matrix(gram: ndarray, c: ndarray) -> ndarray:
    """
    Returns the matrix of left multiplication by v = sum_k c[k] v_k on the
    monomial basis of the Clifford algebra of an even Gram matrix.

    Column S holds v·e_S. With s the lowest index in S and R = S - {s},
    e_S = v_s·e_R and

        v_k·e_S = e_(S+k)                      for k < s,
        v_s·e_S = q(v_s)·e_R,
        v_k·e_S = -v_s·(v_k·e_R) + (v_k, v_s)·e_R   for k > s,

    where v_k·e_R only involves indices above s, so the left factor v_s
    acts on it by inserting s. Columns are filled in increasing order,
    so column R is available when column S is built.
    """
    n = gram.shape[0]
    N = 1 << n
    out = np.zeros((N, N), dtype=np.int64)
    for k in range(n):
        out[1 << k, 0] += c[k]
    for S in range(1, N):
        s = lowest_bit(S)
        low = 1 << s
        R = S ^ low
        for k in range(s):
            out[S | (1 << k), S] += c[k]
        out[R, S] += c[s] * (gram[s, s] // 2)
        # the terms k <= s of column R are exactly its rows meeting {0..s}
        mask = (low << 1) - 1
        for T in range(N):
            w = out[T, R]
            if w != 0 and not T & mask:
                out[T | low, S] -= w
        for k in range(s + 1, n):
            out[R, S] += c[k] * gram[k, s]
    return out


@njit(nogil=True, cache=__cache)
def reversal_signs(n: int) -> ndarray:
    """
    Returns the signs of the reversal anti-involution on the monomials,
    (-1)^(|S|(|S|-1)/2).
    """
    N = 1 << n
    out = np.ones(N, dtype=np.int64)
    for S in range(N):
        k = popcount(S)
        if (k * (k - 1) // 2) % 2:
            out[S] = -1
    return out


@njit(nogil=True, cache=__cache)
def parity_signs(n: int) -> ndarray:
    N = 1 << n
    out = np.ones(N, dtype=np.int64)
    for S in range(N):
        if popcount(S) % 2:
            out[S] = -1
    return out


@njit(nogil=True, cache=__cache)
def first_generator_image(gram: ndarray) -> ndarray:
    """
    Flags the monomials in the image of left multiplication by v_0.

    v_0·e_S = e_(S+0) if 0 is not in S, and v_0·e_S = q(v_0)·e_(S-0)
    otherwise, so every column of the operator holds at most one entry
    and the image is read off without building it.
    """
    n = gram.shape[0]
    N = 1 << n
    q = gram[0, 0] // 2
    out = np.zeros(N, dtype=np.bool_)
    for S in range(N):
        if S & 1:
            if q != 0:
                out[S ^ 1] = True
        else:
            out[S | 1] = True
    return out
