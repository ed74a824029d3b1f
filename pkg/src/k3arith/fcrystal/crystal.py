from typing import Iterable, List, Union

from ..constants import DEFAULT_PRECISION
from ..exceptions import ParentMismatchError, PreconditionError
from ..padic import coefficient_ring
from ..utils.padic import (
    mat_block_diagonal,
    mat_frobenius,
    mat_identity,
    mat_inverse,
    mat_mul,
)
from .polygon import Polygon

__all__ = [
    "FCrystal",
    "TwistedCrystal",
    "tate_twist",
    "block_diagonal",
    "base_change",
    "random_unimodular",
]


class FCrystal:
    """
    A free module of rank r over W_m(F_{p^a}) with a σ-semilinear
    Frobenius F(λv) = σ(λ)F(v), given by its matrix in a basis.

    Column j of the matrix holds the coordinates of F(e_j).

    Parameters
    ----------
    frobenius : Iterable
        The square matrix of F. Entries may be integers, fractions with
        denominators prime to p, coefficient lists or ring elements.
    p : int
        A prime number.
    a : int, Optional
        The degree of the residue field. Default is 1.
    prec : int, Optional
        The precision m. Default is `DEFAULT_PRECISION`.

    Examples
    --------
    >>> from k3arith.fcrystal import FCrystal
    >>> C = FCrystal([[0, 1], [5, 0]], p=5)
    >>> C.newton_polygon().as_dict()
    {Fraction(1, 2): 2}
    """

    __slots__ = ("_ring", "_matrix")

    def __init__(self, frobenius: Iterable, p: int, a: int = 1, prec: int = DEFAULT_PRECISION):
        ring = coefficient_ring(p, a, prec)
        rows = [list(row) for row in frobenius]
        r = len(rows)
        if any(len(row) != r for row in rows):
            raise PreconditionError("The Frobenius matrix must be square.")
        self._ring = ring
        self._matrix = [[ring.convert(x) for x in row] for row in rows]

    @classmethod
    def _from_raw(cls, ring, matrix: List[list]) -> "FCrystal":
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._matrix = [list(row) for row in matrix]
        return obj

    @property
    def ring(self):
        return self._ring

    @property
    def p(self) -> int:
        return self._ring.p

    @property
    def degree(self) -> int:
        return self._ring.degree

    @property
    def prec(self) -> int:
        return self._ring.prec

    @property
    def rank(self) -> int:
        return len(self._matrix)

    @property
    def raw(self) -> List[list]:
        return [list(row) for row in self._matrix]

    @property
    def frobenius(self) -> List[list]:
        """The matrix of F as ring elements."""
        R = self._ring
        return [[R.element(x) for x in row] for row in self._matrix]

    def entry(self, i: int, j: int):
        return self._ring.element(self._matrix[i][j])

    def linearized(self) -> List[list]:
        """
        Returns the raw matrix F·σ(F)·…·σ^(a-1)(F) of the linear map F^a.
        """
        R = self._ring
        out = mat_identity(R, self.rank)
        for k in range(R.degree):
            out = mat_mul(R, out, mat_frobenius(R, self._matrix, k))
        return out

    def base_change(self, g: Iterable) -> "FCrystal":
        """
        Returns the crystal in the coordinates y = g x, with matrix
        g·F·σ(g)^-1.

        Raises
        ------
        PreconditionError
            If g is not invertible over the ring.
        """
        R = self._ring
        g = [[R.convert(x) for x in row] for row in g]
        if len(g) != self.rank:
            raise ParentMismatchError("dimension mismatch")
        try:
            ginv = mat_inverse(R, mat_frobenius(R, g, 1))
        except ZeroDivisionError as e:
            raise PreconditionError("The base change is not invertible.") from e
        return FCrystal._from_raw(R, mat_mul(R, mat_mul(R, g, self._matrix), ginv))

    def with_precision(self, prec: int) -> "FCrystal":
        """Returns the crystal reduced to a lower precision."""
        if prec > self.prec:
            raise PreconditionError("Cannot raise the precision of a crystal.")
        R = self._ring
        S = R.with_precision(prec)
        return FCrystal._from_raw(S, [[R.reduce(x, prec) for x in row] for row in self._matrix])

    def newton_polygon(self) -> Polygon:
        from .slopes import newton_polygon

        return newton_polygon(self)

    def hodge_polygon(self) -> Polygon:
        from .slopes import hodge_polygon

        return hodge_polygon(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FCrystal):
            return NotImplemented
        return self._ring == other._ring and self._matrix == other._matrix

    __hash__ = None

    def __repr__(self) -> str:
        return "FCrystal(p={}, a={}, prec={}, rank={})".format(
            self.p, self.degree, self.prec, self.rank
        )

    def to_dict(self) -> dict:
        R = self._ring
        return {
            "p": self.p,
            "a": self.degree,
            "precision": self.prec,
            "rank": self.rank,
            "frobenius": [[R.to_json(x) for x in row] for row in self._matrix],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FCrystal":
        ring = coefficient_ring(int(d["p"]), int(d.get("a", 1)), int(d["precision"]))
        matrix = [[ring.from_json(x) for x in row] for row in d["frobenius"]]
        if "rank" in d and int(d["rank"]) != len(matrix):
            raise PreconditionError("The rank does not match the matrix.")
        return cls._from_raw(ring, matrix)


class TwistedCrystal:
    """
    The Tate twist C(i) of a crystal, the same module with Frobenius
    p^-i·F. Newton and Hodge slopes are lowered by i.

    Parameters
    ----------
    crystal : FCrystal
        The untwisted crystal.
    twist : int
        The twist index i.
    """

    __slots__ = ("_crystal", "_twist")

    def __init__(self, crystal: FCrystal, twist: int = 0):
        self._crystal = crystal
        self._twist = int(twist)

    @property
    def crystal(self) -> FCrystal:
        return self._crystal

    @property
    def twist(self) -> int:
        return self._twist

    @property
    def rank(self) -> int:
        return self._crystal.rank

    def newton_polygon(self) -> Polygon:
        return self._crystal.newton_polygon().shift(self._twist)

    def hodge_polygon(self) -> Polygon:
        return self._crystal.hodge_polygon().shift(self._twist)

    def to_crystal(self) -> FCrystal:
        """
        Returns the twisted Frobenius as an F-crystal. A positive twist
        divides by p^i and costs i digits of precision.

        Raises
        ------
        PreconditionError
            If p^-i·F is not integral.
        """
        C, i = self._crystal, self._twist
        R = C.ring
        if i <= 0:
            return C._from_raw(R, [[R.times_p(x, -i) for x in row] for row in C.raw])
        if i >= R.prec:
            raise PreconditionError("The twist exhausts the precision.")
        try:
            matrix = [[R.divide_by_p(x, i) for x in row] for row in C.raw]
        except ArithmeticError as e:
            raise PreconditionError("The twisted Frobenius is not integral.") from e
        S = R.with_precision(R.prec - i)
        return C._from_raw(S, [[R.reduce(x, S.prec) for x in row] for row in matrix])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedCrystal):
            return NotImplemented
        return self._twist == other._twist and self._crystal == other._crystal

    __hash__ = None

    def __repr__(self) -> str:
        return "{}({})".format(self._crystal, self._twist)

    def to_dict(self) -> dict:
        return {"twist": self._twist, "crystal": self._crystal.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "TwistedCrystal":
        return cls(FCrystal.from_dict(d["crystal"]), d["twist"])


def tate_twist(C: Union[FCrystal, TwistedCrystal], i: int) -> TwistedCrystal:
    """
    Returns C(i), the pair (C, p^-i·F). Twists compose additively, so
    twisting by i and then by -i gives back the original crystal.

    Examples
    --------
    >>> from k3arith.fcrystal import FCrystal, tate_twist
    >>> C = FCrystal([[3, 0], [0, 3]], p=3)
    >>> tate_twist(C, 1).newton_polygon().as_dict()
    {Fraction(0, 1): 2}
    """
    if isinstance(C, TwistedCrystal):
        return TwistedCrystal(C.crystal, C.twist + int(i))
    return TwistedCrystal(C, i)


def block_diagonal(*crystals: FCrystal) -> FCrystal:
    """
    Returns the direct sum of crystals over the same ring.

    Raises
    ------
    ParentMismatchError
        If the crystals live over different rings.
    """
    if not crystals:
        raise PreconditionError("At least one crystal is required.")
    R = crystals[0].ring
    if any(C.ring != R for C in crystals):
        raise ParentMismatchError("Crystals over different rings.")
    return FCrystal._from_raw(R, mat_block_diagonal(R, *[C.raw for C in crystals]))


def base_change(C: FCrystal, g: Iterable) -> FCrystal:
    return C.base_change(g)


def random_unimodular(r: int, rng, ring) -> List[list]:
    """
    Returns a random invertible r x r matrix over the ring, as raw
    entries: a product of a unipotent lower triangular matrix, an upper
    triangular one with unit diagonal and a permutation.
    """
    L = mat_identity(ring, r)
    U = mat_identity(ring, r)
    for i in range(r):
        for j in range(r):
            if i > j:
                L[i][j] = ring.random(rng)
            elif i < j:
                U[i][j] = ring.random(rng)
        u = ring.random(rng)
        while not ring.is_unit(u):
            u = ring.random(rng)
        U[i][i] = u
    perm = [int(k) for k in rng.permutation(r)]
    M = mat_mul(ring, L, U)
    return [M[k] for k in perm]
