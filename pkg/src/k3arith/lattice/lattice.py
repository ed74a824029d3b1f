from fractions import Fraction
from typing import Iterable, List

import numpy as np
from numpy import ndarray

from ..exceptions import DegenerateFormError, ParentMismatchError, PreconditionError
from ..utils.linalg import (
    as_int_matrix,
    elementary_divisors,
    integer_det,
    rational_inverse,
)

__all__ = ["QuadLattice", "SublatticeEmbedding"]


class QuadLattice:
    """
    A free Z-module of finite rank with an integral symmetric bilinear
    form, given by its Gram matrix in a fixed basis.

    Parameters
    ----------
    gram : Iterable
        A symmetric n x n integer matrix. An empty list defines the
        lattice of rank 0.
    name : str, Optional
        A label used in reports. Default is None.

    Examples
    --------
    >>> from k3arith.lattice import QuadLattice
    >>> U = QuadLattice([[0, 1], [1, 0]], name="U")
    >>> U.rank, U.is_even
    (2, True)
    >>> U.inner([1, 0], [0, 1])
    1
    """

    def __init__(self, gram: Iterable, name: str = None):
        G = as_int_matrix(gram, ncols=0)
        n, m = G.shape
        if n != m:
            raise PreconditionError("The Gram matrix must be square.")
        if np.any(G != G.T):
            raise PreconditionError("The Gram matrix must be symmetric.")
        self._gram = G
        self._name = name

    @property
    def rank(self) -> int:
        return self._gram.shape[0]

    @property
    def gram(self) -> ndarray:
        """Returns a copy of the Gram matrix."""
        return self._gram.copy()

    @property
    def name(self) -> str:
        return self._name

    @property
    def is_even(self) -> bool:
        """
        True if (x, x) is even for every x, that is, if the diagonal of
        the Gram matrix is even.
        """
        return all(self._gram[i, i] % 2 == 0 for i in range(self.rank))

    def _vector(self, v: Iterable) -> ndarray:
        v = np.array([x for x in v], dtype=object)
        if v.shape != (self.rank,):
            raise ParentMismatchError(
                "Expected a vector of length {}.".format(self.rank)
            )
        return v

    def inner(self, v: Iterable, w: Iterable):
        """
        Returns (v, w) for coordinate vectors, integral or rational.
        """
        v, w = self._vector(v), self._vector(w)
        return v.dot(self._gram.dot(w))

    def norm(self, v: Iterable):
        """Returns (v, v)."""
        return self.inner(v, v)

    def quadratic(self, v: Iterable) -> Fraction:
        """Returns q(v) = (v, v) / 2."""
        return Fraction(self.norm(v)) / 2

    def discriminant(self) -> int:
        return integer_det(self._gram)

    def dual_basis(self) -> ndarray:
        """
        Returns the basis of the dual lattice as rows of rational
        coordinates, the rows of the inverse Gram matrix.
        """
        try:
            return rational_inverse(self._gram)
        except ZeroDivisionError as e:
            raise DegenerateFormError() from e

    def __repr__(self) -> str:
        if self._name:
            return "QuadLattice({}, rank={})".format(self._name, self.rank)
        return "QuadLattice(rank={})".format(self.rank)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadLattice):
            return NotImplemented
        return self._gram.shape == other._gram.shape and bool(
            np.all(self._gram == other._gram)
        )

    def __hash__(self) -> int:
        return hash(tuple(int(x) for x in self._gram.flat))

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "gram": [[int(x) for x in row] for row in self._gram],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QuadLattice":
        gram = d["gram"]
        if "rank" in d and int(d["rank"]) != len(gram):
            raise PreconditionError("The rank does not match the Gram matrix.")
        return cls(gram, name=d.get("name"))


class SublatticeEmbedding:
    """
    An isometric embedding of a lattice into another one.

    The columns of `matrix` are the images of the basis vectors of `sub`
    in the coordinates of `ambient`, so that matrix.T @ G @ matrix equals
    the Gram matrix of `sub`.

    Parameters
    ----------
    ambient : QuadLattice
        The target lattice.
    sub : QuadLattice
        The embedded lattice.
    matrix : Iterable
        An integer matrix of shape (ambient.rank, sub.rank).
    """

    def __init__(self, ambient: QuadLattice, sub: QuadLattice, matrix: Iterable):
        M = as_int_matrix(matrix, ncols=sub.rank)
        if M.shape != (ambient.rank, sub.rank):
            raise ParentMismatchError(
                "Expected a matrix of shape {}.".format((ambient.rank, sub.rank))
            )
        induced = M.T.dot(ambient.gram).dot(M)
        if np.any(induced != sub.gram):
            raise PreconditionError("The matrix is not an isometry.")
        self._ambient = ambient
        self._sub = sub
        self._matrix = M

    @classmethod
    def from_vectors(cls, ambient: QuadLattice, vectors: Iterable) -> "SublatticeEmbedding":
        """
        Returns the embedding of the lattice spanned by some vectors of
        the ambient lattice, with the induced form.
        """
        V = as_int_matrix(list(vectors), ncols=ambient.rank)
        M = V.T
        gram = M.T.dot(ambient.gram).dot(M) if len(V) else []
        return cls(ambient, QuadLattice(gram), M)

    @property
    def ambient(self) -> QuadLattice:
        return self._ambient

    @property
    def sub(self) -> QuadLattice:
        return self._sub

    @property
    def matrix(self) -> ndarray:
        return self._matrix.copy()

    def vectors(self) -> List[ndarray]:
        """Returns the images of the basis of `sub`."""
        return [self._matrix[:, j] for j in range(self._sub.rank)]

    def elementary_divisors(self) -> List[int]:
        return elementary_divisors(self._matrix)

    def is_primitive(self) -> bool:
        """
        True if the image is a direct summand of the ambient lattice,
        i.e. the embedding matrix has full rank and all of its
        elementary divisors equal 1.
        """
        ed = self.elementary_divisors()
        return len(ed) == self._sub.rank and all(d == 1 for d in ed)

    def __repr__(self) -> str:
        return "SublatticeEmbedding({} -> {})".format(self._sub, self._ambient)

    def to_dict(self) -> dict:
        return {
            "ambient": self._ambient.to_dict(),
            "sub": self._sub.to_dict(),
            "matrix": [[int(x) for x in row] for row in self._matrix],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SublatticeEmbedding":
        ambient = QuadLattice.from_dict(d["ambient"])
        sub = QuadLattice.from_dict(d["sub"])
        return cls(ambient, sub, d["matrix"])
