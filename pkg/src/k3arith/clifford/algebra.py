from fractions import Fraction
from functools import reduce
from math import gcd
from threading import Lock
from typing import Dict, Iterable, Union

import numpy as np
from numpy import ndarray

from ..constants import DENSE_RANK_LIMIT
from ..exceptions import DenseRankError, ParentMismatchError, PreconditionError
from ..lattice import QuadLattice
from ..utils.clifford import lmul_matrix, reversal_signs, parity_signs
from .operator import EndOperator

__all__ = ["CliffordAlgebra", "CliffordElement", "cl_mul"]

Sparse = Dict[int, Fraction]


def _bits(S: int):
    i = 0
    while S:
        if S & 1:
            yield i
        S >>= 1
        i += 1


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in values), 1)


class CliffordAlgebra:
    """
    The Clifford algebra Cl(M) of an even lattice over the rationals,
    with relations v^2 = q(v) = (v, v) / 2.

    Elements are expanded in the monomial basis e_S = v_i1 v_i2 ... v_ik,
    i1 < ... < ik, indexed by the bitmask S of {i1, ..., ik}. Products are
    evaluated sparsely, so elements can be handled at any rank, while
    dense operators on the 2^n dimensional algebra are only built up to
    `DENSE_RANK_LIMIT`.

    Products of generators with monomials are memoized; the table is
    shared between threads and guarded by a lock.

    Parameters
    ----------
    lattice : QuadLattice or Iterable
        An even lattice, or its Gram matrix.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice
    >>> from k3arith.clifford import CliffordAlgebra
    >>> Cl = CliffordAlgebra(standard_lattice("U"))
    >>> x, y = Cl.gens()
    >>> x * y + y * x == Cl.one()
    True
    """

    def __init__(self, lattice: Union[QuadLattice, Iterable]):
        if not isinstance(lattice, QuadLattice):
            lattice = QuadLattice(lattice)
        if not lattice.is_even:
            raise PreconditionError("The lattice must be even.")
        self._lattice = lattice
        G = lattice.gram
        self._gram = [[int(x) for x in row] for row in G]
        self._q = [self._gram[i][i] // 2 for i in range(lattice.rank)]
        self._table: Dict[tuple, Dict[int, int]] = {}
        self._lock = Lock()

    @property
    def lattice(self) -> QuadLattice:
        return self._lattice

    @property
    def rank(self) -> int:
        return self._lattice.rank

    @property
    def dim(self) -> int:
        return 1 << self.rank

    @property
    def gram(self) -> list:
        return [list(row) for row in self._gram]

    def __repr__(self) -> str:
        return "CliffordAlgebra({})".format(self._lattice)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordAlgebra):
            return NotImplemented
        return self._gram == other._gram

    def __hash__(self) -> int:
        return hash(tuple(map(tuple, self._gram)))

    # elements

    def element(self, coeffs: Dict[int, object] = None) -> "CliffordElement":
        return CliffordElement(self, coeffs or {})

    def one(self) -> "CliffordElement":
        return CliffordElement(self, {0: 1})

    def monomial(self, S: int) -> "CliffordElement":
        if not 0 <= S < self.dim:
            raise PreconditionError("Invalid monomial {}.".format(S))
        return CliffordElement(self, {S: 1})

    def gens(self) -> list:
        return [self.monomial(1 << i) for i in range(self.rank)]

    def vector(self, v: Iterable) -> "CliffordElement":
        """Returns the image of a lattice vector (in coordinates) in Cl."""
        v = list(v)
        if len(v) != self.rank:
            raise ParentMismatchError("Expected a vector of length {}.".format(self.rank))
        return CliffordElement(self, {1 << i: c for i, c in enumerate(v)})

    def random_element(self, rng, parity: int = None, bound: int = 3, density: float = 0.5):
        """
        Returns an element with random integer coefficients in
        [-bound, bound] on a random subset of the monomials.
        """
        coeffs = {}
        for S in range(self.dim):
            if parity is not None and bin(S).count("1") % 2 != parity:
                continue
            if rng.random() < density:
                coeffs[S] = int(rng.integers(-bound, bound + 1))
        return CliffordElement(self, coeffs)

    def coordinates(self, a: "CliffordElement") -> ndarray:
        """Returns the dense coordinate vector of an element."""
        self._check_dense()
        out = np.array([Fraction(0)] * self.dim, dtype=object)
        for S, c in a.raw.items():
            out[S] = c
        return out

    def from_coordinates(self, vector: Iterable) -> "CliffordElement":
        return CliffordElement(self, {S: c for S, c in enumerate(vector) if c})

    # multiplication

    def _gen_mul(self, k: int, S: int) -> Dict[int, int]:
        """Returns v_k e_S as a sparse map with integer coefficients."""
        key = (k, S)
        res = self._table.get(key)
        if res is not None:
            return res
        if S == 0:
            res = {1 << k: 1}
        else:
            s = (S & -S).bit_length() - 1
            low = 1 << s
            R = S ^ low
            if k < s:
                res = {S | (1 << k): 1}
            elif k == s:
                res = {R: self._q[s]} if self._q[s] else {}
            else:
                # v_k v_s e_R = -v_s (v_k e_R) + (v_k, v_s) e_R
                res = {T | low: -c for T, c in self._gen_mul(k, R).items()}
                b = self._gram[k][s]
                if b:
                    res[R] = res.get(R, 0) + b
                res = {T: c for T, c in res.items() if c}
        with self._lock:
            self._table[key] = res
        return res

    def _mono_mul(self, S: int, T: int) -> Dict[int, int]:
        """Returns e_S e_T as a sparse map with integer coefficients."""
        acc = {T: 1}
        for k in reversed(list(_bits(S))):
            new: Dict[int, int] = {}
            for U, c in acc.items():
                for V, d in self._gen_mul(k, U).items():
                    new[V] = new.get(V, 0) + c * d
            acc = {U: c for U, c in new.items() if c}
        return acc

    def mul(self, a: Sparse, b: Sparse) -> Sparse:
        out: Dict[int, Fraction] = {}
        for S, x in a.items():
            for T, y in b.items():
                xy = x * y
                for U, c in self._mono_mul(S, T).items():
                    out[U] = out.get(U, 0) + xy * c
        return {U: Fraction(c) for U, c in out.items() if c}

    # dense operators

    def _check_dense(self):
        if self.rank > DENSE_RANK_LIMIT:
            raise DenseRankError(
                "rank too large for dense operator: {} > {}".format(
                    self.rank, DENSE_RANK_LIMIT
                )
            )

    def lmul_operator(self, v: Iterable) -> EndOperator:
        """
        Returns i(v), the left multiplication by a lattice vector v given
        by rational coordinates.

        Raises
        ------
        DenseRankError
            If the rank exceeds `DENSE_RANK_LIMIT`.
        """
        self._check_dense()
        v = [Fraction(x) for x in v]
        if len(v) != self.rank:
            raise ParentMismatchError("Expected a vector of length {}.".format(self.rank))
        den = _lcm_denominators(v)
        c = [int(x * den) for x in v]
        bound = max([abs(x) for x in c] + [0]) * max(
            [abs(x) for row in self._gram for x in row] + [1]
        )
        if bound * self.rank < 2**62:
            gram = np.array(self._gram, dtype=np.int64).reshape(self.rank, self.rank)
            M = lmul_matrix(gram, np.array(c, dtype=np.int64))
            return EndOperator(M, den)
        return self.lmul_element_operator(self.vector(c)).scale(Fraction(1, den))

    def lmul_element_operator(self, a: "CliffordElement") -> EndOperator:
        """Returns the left multiplication by an arbitrary element."""
        return self._operator(a, left=True)

    def rmul_operator(self, b: "CliffordElement") -> EndOperator:
        """Returns the right multiplication h -> h b."""
        return self._operator(b, left=False)

    def _operator(self, a: "CliffordElement", left: bool) -> EndOperator:
        self._check_dense()
        self._check(a)
        N = self.dim
        den = _lcm_denominators(a.raw.values())
        M = np.zeros((N, N), dtype=object)
        for S in range(N):
            for T, x in a.raw.items():
                xd = int(x * den)
                prod = self._mono_mul(T, S) if left else self._mono_mul(S, T)
                for U, c in prod.items():
                    M[U, S] += xd * c
        return EndOperator(M, den)

    def parity_projector(self, sign: int = 1) -> EndOperator:
        """
        Returns the projector onto the even (sign = 1) or the odd
        (sign = -1) part.
        """
        self._check_dense()
        if sign not in (1, -1):
            raise PreconditionError("The sign must be 1 or -1.")
        signs = parity_signs(self.rank)
        diag = (1 + sign * signs) // 2
        return EndOperator(np.diag(diag).astype(np.int64))

    def reversal_operator(self) -> EndOperator:
        self._check_dense()
        return EndOperator(np.diag(reversal_signs(self.rank)).astype(np.int64))

    def _check(self, a: "CliffordElement"):
        if not isinstance(a, CliffordElement) or a.parent != self:
            raise ParentMismatchError("The element belongs to another algebra.")


class CliffordElement:
    """
    An element of a Clifford algebra, as a sparse map from monomial
    bitmasks to rational coefficients.
    """

    __slots__ = ("_parent", "_c")

    def __init__(self, parent: CliffordAlgebra, coeffs: Dict[int, object]):
        self._parent = parent
        c = {}
        for S, x in coeffs.items():
            S = int(S)
            if not 0 <= S < parent.dim:
                raise PreconditionError("Invalid monomial {}.".format(S))
            x = Fraction(x)
            if x:
                c[S] = x
        self._c = c

    @property
    def parent(self) -> CliffordAlgebra:
        return self._parent

    @property
    def raw(self) -> Sparse:
        return self._c

    def __getitem__(self, S: int) -> Fraction:
        return self._c.get(S, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_scalar(self) -> bool:
        return all(S == 0 for S in self._c)

    def scalar_part(self) -> Fraction:
        return self[0]

    def parity(self) -> Union[int, None]:
        """
        Returns 0 for even elements, 1 for odd ones and None for elements
        that are not homogeneous. Zero counts as even.
        """
        parities = {bin(S).count("1") % 2 for S in self._c}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def is_even(self) -> bool:
        return self.parity() == 0

    def reversal(self) -> "CliffordElement":
        """
        Returns the image under the anti-involution fixing the lattice,
        e_S -> (-1)^(k(k-1)/2) e_S for |S| = k.
        """
        out = {}
        for S, x in self._c.items():
            k = bin(S).count("1")
            out[S] = -x if (k * (k - 1) // 2) % 2 else x
        return CliffordElement(self._parent, out)

    def _coerce(self, other):
        if isinstance(other, CliffordElement):
            if other._parent != self._parent:
                raise ParentMismatchError("Elements of different algebras.")
            return other
        try:
            return CliffordElement(self._parent, {0: Fraction(other)})
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._c)
        for S, x in other._c.items():
            out[S] = out.get(S, 0) + x
        return CliffordElement(self._parent, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self._parent, {S: -x for S, x in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return CliffordElement(self._parent, {S: c * x for S, x in self._c.items()})

    def __rmul__(self, other):
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return CliffordElement(self._parent, {S: c * x for S, x in self._c.items()})

    def __eq__(self, other) -> bool:
        other = self._coerce(other) if not isinstance(other, CliffordElement) else other
        if other is None:
            return NotImplemented
        return self._parent == other._parent and self._c == other._c

    __hash__ = None

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for S in sorted(self._c):
            name = "*".join("v{}".format(i) for i in _bits(S)) or "1"
            terms.append("{}*{}".format(self._c[S], name))
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {"coeffs": {str(S): str(x) for S, x in sorted(self._c.items())}}

    @classmethod
    def from_dict(cls, parent: CliffordAlgebra, d: dict) -> "CliffordElement":
        return cls(parent, {int(S): Fraction(x) for S, x in d["coeffs"].items()})


def cl_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """
    Returns the Clifford product of two elements of the same algebra.

    Monomials are brought to increasing order with v_i v_j = -v_j v_i +
    (v_i, v_j) and v_i^2 = q(v_i), so non-orthogonal bases are fine.

    Raises
    ------
    ParentMismatchError
        If the elements belong to different algebras.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice
    >>> from k3arith.clifford import CliffordAlgebra, cl_mul
    >>> Cl = CliffordAlgebra(standard_lattice("U"))
    >>> v = Cl.vector([1, 1])
    >>> cl_mul(v, v) == Cl.one()
    True
    """
    if not isinstance(a, CliffordElement) or not isinstance(b, CliffordElement):
        raise TypeError("Expected Clifford elements.")
    if a.parent != b.parent:
        raise ParentMismatchError("Elements of different algebras.")
    return CliffordElement(a.parent, a.parent.mul(a.raw, b.raw))
