from typing import List, Tuple

import numpy as np

from ..exceptions import DegenerateFormError
from ..utils.linalg import (
    congruence_diagonalize,
    elementary_divisors as _elementary_divisors,
    integer_det,
    integer_kernel,
)
from .lattice import QuadLattice, SublatticeEmbedding
from .standard import standard_lattice, _prime, _positive

__all__ = [
    "direct_sum",
    "discriminant",
    "signature",
    "is_self_dual_at",
    "discriminant_group",
    "orthogonal_complement",
    "embed_into_selfdual",
    "elementary_divisors",
    "is_primitive",
]


def direct_sum(*lattices: QuadLattice) -> QuadLattice:
    """
    Returns the orthogonal direct sum of lattices, with block diagonal
    Gram matrix.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice, direct_sum, discriminant
    >>> U = standard_lattice("U")
    >>> discriminant(direct_sum(U, U))
    1
    """
    n = sum(A.rank for A in lattices)
    G = np.zeros((n, n), dtype=object)
    i = 0
    for A in lattices:
        k = A.rank
        G[i : i + k, i : i + k] = A.gram
        i += k
    names = [A.name for A in lattices if A.name]
    name = " + ".join(names) if len(names) == len(lattices) else None
    return QuadLattice(G, name=name)


def discriminant(A: QuadLattice) -> int:
    """
    Returns the signed determinant of the Gram matrix, by fraction-free
    elimination.
    """
    return integer_det(A.gram)


def signature(A: QuadLattice) -> Tuple[int, int]:
    """
    Returns the numbers of positive and negative squares of the form,
    from an exact rational diagonalization.

    Raises
    ------
    DegenerateFormError
        If the Gram matrix is singular.
    """
    diag, _ = congruence_diagonalize(A.gram)
    if any(d == 0 for d in diag):
        raise DegenerateFormError()
    pos = sum(1 for d in diag if d > 0)
    return pos, len(diag) - pos


def is_self_dual_at(A: QuadLattice, p: int) -> bool:
    """True if p does not divide the discriminant."""
    return discriminant(A) % p != 0


def discriminant_group(A: QuadLattice) -> List[int]:
    """
    Returns the invariant factors of the discriminant group A^v/A, the
    Smith invariants of the Gram matrix different from 1.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice, discriminant_group
    >>> discriminant_group(standard_lattice("L", d=5))
    [10]
    """
    ed = _elementary_divisors(A.gram)
    if len(ed) < A.rank:
        raise DegenerateFormError()
    return [d for d in ed if d != 1]


def elementary_divisors(M) -> List[int]:
    return _elementary_divisors(M)


def is_primitive(E: SublatticeEmbedding) -> bool:
    return E.is_primitive()


def orthogonal_complement(E: SublatticeEmbedding) -> SublatticeEmbedding:
    """
    Returns the embedding of {v : (v, s) = 0 for all s in the image of E}
    into the ambient lattice. The basis is the Hermite normal form of
    a saturated kernel basis, so the result is always primitive.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice, direct_sum
    >>> from k3arith.lattice import SublatticeEmbedding, orthogonal_complement
    >>> U = standard_lattice("U")
    >>> E = SublatticeEmbedding.from_vectors(direct_sum(U, U), [[1, 0, 0, 0], [0, 1, 0, 0]])
    >>> orthogonal_complement(E).sub.gram.tolist()
    [[0, 1], [1, 0]]
    """
    ambient = E.ambient
    n = ambient.rank
    # row j of B is (s_j, -) as a linear form on the ambient lattice
    B = E.matrix.T.dot(ambient.gram)
    K = integer_kernel(B, ncols=n)
    gram = K.dot(ambient.gram).dot(K.T) if len(K) else []
    return SublatticeEmbedding(ambient, QuadLattice(gram), K.T)


def embed_into_selfdual(
    d: int, p: int
) -> Tuple[QuadLattice, QuadLattice, SublatticeEmbedding]:
    """
    Embeds L = E8 + E8 + U + U + <2d> into the even lattice
    Ltilde = E8 + E8 + U + U + Lprime, where Lprime has the Gram matrix
    [[2d, 1], [1, 2p]].

    The embedding is the identity on E8 + E8 + U + U and sends the
    generator of <2d> to the first basis vector of Lprime. Ltilde has
    signature (20, 2) and discriminant 4dp - 1, which is prime to p,
    and the image of L is a direct summand.

    Parameters
    ----------
    d : int
        A positive integer.
    p : int
        A prime.

    Returns
    -------
    tuple
        L, Ltilde and the embedding.

    Examples
    --------
    >>> from k3arith.lattice import embed_into_selfdual, discriminant
    >>> L, Lt, E = embed_into_selfdual(1, 2)
    >>> discriminant(Lt), E.is_primitive()
    (7, True)
    """
    d, p = _positive("d", d), _prime(p)
    L = standard_lattice("L", d=d)
    Lt = standard_lattice("Ltilde", d=d, p=p)
    M = np.zeros((Lt.rank, L.rank), dtype=object)
    for i in range(L.rank):
        M[i, i] = 1
    return L, Lt, SublatticeEmbedding(Lt, L, M)
