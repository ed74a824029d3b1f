from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

from ..exceptions import ParentMismatchError
from .valuation import AtLeast, ExtendedNatural, vp_residue

__all__ = ["PadicRing", "PadicInt", "padic_ring"]


class PadicRing:
    """
    The ring Z/p^m, read as the p-adic integers known to `m` digits.

    Elements are handled in two layers. The ring itself computes with
    raw residues (plain integers in [0, p^m)), which is what series and
    matrix code uses internally. Calling the ring wraps a value into
    a `PadicInt`.

    Parameters
    ----------
    p : int
        A prime number.
    prec : int
        The precision m, a positive integer.

    Examples
    --------
    >>> from k3arith.padic import PadicRing
    >>> R = PadicRing(5, 6)
    >>> R(50).valuation()
    2
    """

    degree = 1

    def __init__(self, p: int, prec: int):
        if prec < 1:
            raise ValueError("The precision must be a positive integer.")
        self._p = int(p)
        self._prec = int(prec)
        self._modulus = self._p**self._prec

    @property
    def p(self) -> int:
        return self._p

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def residue_size(self) -> int:
        """Returns the size q of the residue field."""
        return self._p

    def __repr__(self) -> str:
        return "PadicRing({}, {})".format(self._p, self._prec)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PadicRing)
            and self._p == other._p
            and self._prec == other._prec
        )

    def __hash__(self) -> int:
        return hash(("PadicRing", self._p, self._prec))

    def __call__(self, value=0) -> "PadicInt":
        return PadicInt(self.convert(value), self._p, self._prec)

    def with_precision(self, prec: int) -> "PadicRing":
        return padic_ring(self._p, prec)

    # raw layer

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self._modulus

    def convert(self, value) -> int:
        """
        Returns the raw residue of an integer, a rational number with
        denominator prime to p, or a truncated element of this prime.
        """
        if isinstance(value, PadicInt):
            if value.p != self._p:
                raise ParentMismatchError("Elements of different primes.")
            if value.prec < self._prec:
                raise ParentMismatchError(
                    "Cannot raise the precision of {}.".format(value)
                )
            return value.value % self._modulus
        if hasattr(value, "coeffs") and hasattr(value, "ring"):
            if value.p != self._p or value.prec < self._prec:
                raise ParentMismatchError("Cannot convert {}.".format(value))
            coeffs = value.coeffs
            if any(c % self._modulus for c in coeffs[1:]):
                raise ParentMismatchError("The element is not in Z_p.")
            return coeffs[0] % self._modulus
        if isinstance(value, Integral):
            return int(value) % self._modulus
        if isinstance(value, Rational):
            value = Fraction(value)
            den = value.denominator
            if den % self._p == 0:
                raise ZeroDivisionError(
                    "{} is not integral at {}.".format(value, self._p)
                )
            return value.numerator * pow(den, -1, self._modulus) % self._modulus
        raise TypeError("Cannot convert {} to {}.".format(type(value), self))

    def element(self, raw: int) -> "PadicInt":
        return PadicInt(raw, self._p, self._prec)

    def add(self, x: int, y: int) -> int:
        return (x + y) % self._modulus

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self._modulus

    def neg(self, x: int) -> int:
        return -x % self._modulus

    def mul(self, x: int, y: int) -> int:
        return x * y % self._modulus

    def scalar(self, c: int, x: int) -> int:
        return c * x % self._modulus

    def is_zero(self, x: int) -> bool:
        return x == 0

    def valuation(self, x: int) -> ExtendedNatural:
        return vp_residue(x, self._p, self._prec)

    def is_unit(self, x: int) -> bool:
        return x % self._p != 0

    def inverse(self, x: int) -> int:
        if x % self._p == 0:
            raise ZeroDivisionError("{} is not a unit mod {}.".format(x, self._p))
        return pow(x, -1, self._modulus)

    def power(self, x: int, n: int) -> int:
        return pow(x, n, self._modulus)

    def frobenius(self, x: int, k: int = 1) -> int:
        return x

    def reduce(self, x: int, prec: int) -> int:
        return x % self._p**prec

    def divide_by_p(self, x: int, k: int) -> int:
        """
        Returns x / p^k for a residue divisible by p^k. The result is
        only meaningful modulo p^(m-k).
        """
        q, r = divmod(x, self._p**k)
        if r:
            raise ArithmeticError("{} is not divisible by {}^{}.".format(x, self._p, k))
        return q

    def times_p(self, x: int, k: int) -> int:
        return x * self._p**k % self._modulus

    def lift(self, x: int) -> int:
        """Returns the canonical integer representative."""
        return x

    def residue(self, x: int) -> int:
        return x % self._p

    def embed(self, raw: int, target) -> object:
        """Maps a raw residue into a ring of the same prime."""
        return target.base_element(raw)

    def base_element(self, n: int) -> int:
        return int(n) % self._modulus

    def random(self, rng) -> int:
        return int(rng.integers(0, self._modulus)) if self._modulus < 2**63 else (
            sum(int(rng.integers(0, self._p)) * self._p**i for i in range(self._prec))
        )

    def random_element(self, rng) -> "PadicInt":
        return self.element(self.random(rng))

    def to_json(self, x: int):
        return x

    def from_json(self, obj) -> int:
        return self.convert(int(obj))


@lru_cache(maxsize=None)
def padic_ring(p: int, prec: int) -> PadicRing:
    return PadicRing(p, prec)


class PadicInt:
    """
    A p-adic integer known modulo p^m.

    Arithmetic between elements of different precisions truncates to the
    smaller one, so a result never claims more digits than its inputs.

    Parameters
    ----------
    value : int or Fraction
        The value, reduced modulo p^m on construction. Fractions need
        a denominator prime to p.
    p : int
        A prime number.
    prec : int
        The precision m.

    Examples
    --------
    >>> from k3arith.padic import PadicInt
    >>> x = PadicInt(3, 5, 4)
    >>> (x * x.inverse()).value
    1
    >>> (x + PadicInt(1, 5, 2)).prec
    2
    """

    __slots__ = ("_ring", "_value")

    def __init__(self, value, p: int, prec: int):
        self._ring = padic_ring(p, prec)
        self._value = self._ring.convert(value)

    @classmethod
    def _make(cls, ring: PadicRing, raw: int) -> "PadicInt":
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._value = raw
        return obj

    @property
    def p(self) -> int:
        return self._ring.p

    @property
    def prec(self) -> int:
        return self._ring.prec

    @property
    def value(self) -> int:
        return self._value

    @property
    def ring(self) -> PadicRing:
        return self._ring

    def __repr__(self) -> str:
        return "PadicInt({} + O({}^{}))".format(self._value, self.p, self.prec)

    def __int__(self) -> int:
        return self._value

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ParentMismatchError("Elements of different primes.")
            ring = self._ring if self.prec <= other.prec else other._ring
            return ring, self._value % ring.modulus, other._value % ring.modulus
        if isinstance(other, (Integral, Rational)):
            return self._ring, self._value, self._ring.convert(other)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.sub(x, y))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.sub(y, x))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.mul(x, y))

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt._make(self._ring, self._ring.neg(self._value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PadicInt._make(self._ring, self._ring.power(self._value, n))

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.mul(x, ring.inverse(y)))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return PadicInt._make(ring, ring.mul(y, ring.inverse(x)))

    def __eq__(self, other) -> bool:
        c = self._coerce(other) if isinstance(other, (PadicInt, Integral, Rational)) else None
        if c is None:
            return NotImplemented
        _, x, y = c
        return x == y

    def __hash__(self) -> int:
        return hash((self.p, self._value % self.p))

    def __bool__(self) -> bool:
        return self._value != 0

    def valuation(self) -> ExtendedNatural:
        return self._ring.valuation(self._value)

    def is_unit(self) -> bool:
        return self._ring.is_unit(self._value)

    def inverse(self) -> "PadicInt":
        return PadicInt._make(self._ring, self._ring.inverse(self._value))

    def unit_part(self) -> "PadicInt":
        """
        Returns u with x = p^v·u, known to m - v digits.
        """
        v = self.valuation()
        if isinstance(v, AtLeast):
            raise ZeroDivisionError("Zero has no unit part.")
        ring = self._ring.with_precision(self.prec - v) if v else self._ring
        return PadicInt._make(ring, (self._value // self.p**v) % ring.modulus)

    def reduce(self, prec: int) -> "PadicInt":
        """Returns the element at a lower precision."""
        if prec > self.prec:
            raise ParentMismatchError("Cannot raise the precision.")
        return PadicInt(self._value, self.p, prec)

    def residue(self) -> int:
        return self._value % self.p

    def frobenius(self, k: int = 1) -> "PadicInt":
        return self

    def to_json(self) -> int:
        return self._value
