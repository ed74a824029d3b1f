import logging
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational
from typing import Tuple, Union

from sympy import Poly, Symbol

from ..exceptions import ParentMismatchError
from .valuation import AtLeast, ExtendedNatural, vp_int
from .padicint import PadicInt, padic_ring

__all__ = [
    "WittRing",
    "WittElem",
    "witt_ring",
    "coefficient_ring",
    "witt_frobenius",
    "frobenius_modulus",
    "least_irreducible",
]

logger = logging.getLogger(__name__)

Raw = Tuple[int, ...]


def _mulmod(x: Raw, y: Raw, phi: Raw, mod: int) -> Raw:
    # product of two residues modulo the monic polynomial phi and mod
    a = len(phi) - 1
    prod = [0] * (2 * a - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] += xi * yj
    for d in range(2 * a - 2, a - 1, -1):
        c = prod[d] % mod
        if c:
            for k in range(a):
                prod[d - a + k] -= c * phi[k]
    return tuple(c % mod for c in prod[:a])


def _powmod(x: Raw, n: int, phi: Raw, mod: int) -> Raw:
    a = len(phi) - 1
    res = (1 % mod,) + (0,) * (a - 1)
    while n:
        if n & 1:
            res = _mulmod(res, x, phi, mod)
        n >>= 1
        if n:
            x = _mulmod(x, x, phi, mod)
    return res


@lru_cache(maxsize=None)
def least_irreducible(p: int, a: int) -> Raw:
    """
    Returns the monic irreducible polynomial of degree `a` over F_p whose
    non-leading coefficients, read as the base-p digits of an integer
    (constant term least significant), give the smallest value.

    The result is a coefficient tuple from the constant term upwards,
    leading 1 included.
    """
    t = Symbol("t")
    for n in range(p**a):
        low = [(n // p**i) % p for i in range(a)]
        coeffs = low + [1]
        if Poly(list(reversed(coeffs)), t, modulus=p).is_irreducible:
            return tuple(coeffs)
    raise ArithmeticError("No irreducible polynomial found.")  # pragma: no cover


@lru_cache(maxsize=None)
def frobenius_modulus(p: int, a: int, prec: int) -> Raw:
    """
    Returns the minimal polynomial Φ, modulo p^prec, of the Teichmüller
    lift of a root of `least_irreducible(p, a)`.

    Z_p[t]/(Φ) is the Witt ring W(F_{p^a}), and the substitution t -> t^p
    is its Frobenius. Moduli of different precisions are compatible:
    the one at precision k is the reduction of the one at precision m > k.
    """
    if a == 1:
        return (0, 1)
    mod = p**prec
    q = p**a
    f = least_irreducible(p, a)
    x = (0, 1) + (0,) * (a - 2)
    for _ in range(prec):
        x = _powmod(x, q, f, mod)
    roots = [x]
    for _ in range(a - 1):
        roots.append(_powmod(roots[-1], p, f, mod))
    zero = (0,) * a
    poly = [(1,) + (0,) * (a - 1)]
    for r in roots:
        new = [zero] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = tuple((u + v) % mod for u, v in zip(new[k + 1], c))
            cr = _mulmod(c, r, f, mod)
            new[k] = tuple((u - v) % mod for u, v in zip(new[k], cr))
        poly = new
    if any(any(c[1:]) for c in poly):
        raise ArithmeticError("The Frobenius modulus is not defined over Z_p.")
    phi = tuple(c[0] for c in poly)
    logger.debug("Frobenius modulus for p=%d, a=%d, m=%d: %s", p, a, prec, phi)
    return phi


class WittRing:
    """
    The truncated Witt ring W_m(F_{p^a}) = (Z/p^m)[t]/(Φ), with Φ the
    Frobenius modulus of `frobenius_modulus`.

    Raw elements are tuples of `a` residues modulo p^m, the coordinates in
    the basis 1, t, ..., t^(a-1). Calling the ring wraps values into
    `WittElem` objects.

    Parameters
    ----------
    p : int
        A prime number.
    a : int
        The degree of the residue field over F_p.
    prec : int
        The precision m.

    Examples
    --------
    >>> from k3arith.padic import WittRing
    >>> W = WittRing(3, 2, 8)
    >>> w = W([1, 2])
    >>> w.frobenius().frobenius() == w
    True
    """

    def __init__(self, p: int, a: int, prec: int):
        if prec < 1 or a < 1:
            raise ValueError("Degree and precision must be positive integers.")
        self._p = int(p)
        self._a = int(a)
        self._prec = int(prec)
        self._modulus = self._p**self._prec
        self._phi = frobenius_modulus(self._p, self._a, self._prec)
        a, mod, phi = self._a, self._modulus, self._phi
        t_p = _powmod((0, 1) + (0,) * (a - 2), self._p, phi, mod) if a > 1 else (0,)
        images = [(1,) + (0,) * (a - 1)]
        for _ in range(a - 1):
            images.append(_mulmod(images[-1], t_p, phi, mod))
        # column i is sigma(t^i) = t^(p*i)
        self._frobenius_images = tuple(images)

    @property
    def p(self) -> int:
        return self._p

    @property
    def degree(self) -> int:
        return self._a

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def phi(self) -> Raw:
        return self._phi

    @property
    def residue_size(self) -> int:
        return self._p**self._a

    def __repr__(self) -> str:
        return "WittRing({}, {}, {})".format(self._p, self._a, self._prec)

    def __eq__(self, other) -> bool:
        return isinstance(other, WittRing) and (
            (self._p, self._a, self._prec) == (other._p, other._a, other._prec)
        )

    def __hash__(self) -> int:
        return hash(("WittRing", self._p, self._a, self._prec))

    def __call__(self, value=0) -> "WittElem":
        return WittElem._make(self, self.convert(value))

    def with_precision(self, prec: int) -> "WittRing":
        return witt_ring(self._p, self._a, prec)

    @property
    def gen(self) -> "WittElem":
        """Returns the class of t, the Teichmüller lift fixed by Φ."""
        if self._a == 1:
            return self(0)
        return WittElem._make(self, (0, 1) + (0,) * (self._a - 2))

    # raw layer

    @property
    def zero(self) -> Raw:
        return (0,) * self._a

    @property
    def one(self) -> Raw:
        return (1 % self._modulus,) + (0,) * (self._a - 1)

    def base_element(self, n: int) -> Raw:
        return (int(n) % self._modulus,) + (0,) * (self._a - 1)

    def convert(self, value) -> Raw:
        """
        Returns the raw form of an integer, a rational number with
        denominator prime to p, a coefficient list, a `PadicInt` or
        a `WittElem` of the same degree and at least this precision.
        """
        if isinstance(value, WittElem):
            if value.p != self._p or value.degree != self._a:
                raise ParentMismatchError("Elements of different Witt rings.")
            if value.prec < self._prec:
                raise ParentMismatchError(
                    "Cannot raise the precision of {}.".format(value)
                )
            return tuple(c % self._modulus for c in value.coeffs)
        if isinstance(value, PadicInt):
            if value.p != self._p or value.prec < self._prec:
                raise ParentMismatchError("Cannot convert {}.".format(value))
            return self.base_element(value.value)
        if isinstance(value, (list, tuple)):
            if len(value) > self._a:
                raise ValueError("Too many coefficients for degree {}.".format(self._a))
            coeffs = [padic_ring(self._p, self._prec).convert(c) for c in value]
            return tuple(coeffs) + (0,) * (self._a - len(coeffs))
        if isinstance(value, Integral):
            return self.base_element(value)
        if isinstance(value, Rational):
            return self.base_element(padic_ring(self._p, self._prec).convert(Fraction(value)))
        raise TypeError("Cannot convert {} to {}.".format(type(value), self))

    def element(self, raw: Raw) -> "WittElem":
        return WittElem._make(self, raw)

    def add(self, x: Raw, y: Raw) -> Raw:
        m = self._modulus
        return tuple((u + v) % m for u, v in zip(x, y))

    def sub(self, x: Raw, y: Raw) -> Raw:
        m = self._modulus
        return tuple((u - v) % m for u, v in zip(x, y))

    def neg(self, x: Raw) -> Raw:
        m = self._modulus
        return tuple(-u % m for u in x)

    def mul(self, x: Raw, y: Raw) -> Raw:
        return _mulmod(x, y, self._phi, self._modulus)

    def scalar(self, c: int, x: Raw) -> Raw:
        m = self._modulus
        return tuple(c * u % m for u in x)

    def is_zero(self, x: Raw) -> bool:
        return not any(x)

    def valuation(self, x: Raw) -> ExtendedNatural:
        vals = [vp_int(c, self._p) for c in x if c]
        if not vals:
            return AtLeast(self._prec)
        return min(vals)

    def is_unit(self, x: Raw) -> bool:
        return any(c % self._p for c in x)

    def inverse(self, x: Raw) -> Raw:
        if not self.is_unit(x):
            raise ZeroDivisionError("{} is not a unit.".format(x))
        q = self.residue_size
        order = (q - 1) * q ** (self._prec - 1)
        return _powmod(x, order - 1, self._phi, self._modulus)

    def power(self, x: Raw, n: int) -> Raw:
        return _powmod(x, n, self._phi, self._modulus)

    def frobenius(self, x: Raw, k: int = 1) -> Raw:
        for _ in range(k % self._a):
            res = [0] * self._a
            for c, image in zip(x, self._frobenius_images):
                if c:
                    for j, b in enumerate(image):
                        res[j] += c * b
            x = tuple(r % self._modulus for r in res)
        return x

    def reduce(self, x: Raw, prec: int) -> Raw:
        m = self._p**prec
        return tuple(c % m for c in x)

    def divide_by_p(self, x: Raw, k: int) -> Raw:
        d = self._p**k
        if any(c % d for c in x):
            raise ArithmeticError("{} is not divisible by {}^{}.".format(x, self._p, k))
        return tuple(c // d for c in x)

    def times_p(self, x: Raw, k: int) -> Raw:
        return self.scalar(self._p**k, x)

    def lift(self, x: Raw) -> Raw:
        return x

    def residue(self, x: Raw) -> Raw:
        return tuple(c % self._p for c in x)

    def teichmuller(self, x: Raw) -> Raw:
        """
        Returns the multiplicative representative with the residue of x,
        the limit of x^(q^k).
        """
        q = self.residue_size
        for _ in range(self._prec):
            x = self.power(x, q)
        return x

    def random(self, rng) -> Raw:
        p = self._p
        return tuple(
            sum(int(rng.integers(0, p)) * p**i for i in range(self._prec))
            for _ in range(self._a)
        )

    def random_element(self, rng) -> "WittElem":
        return self.element(self.random(rng))

    def to_json(self, x: Raw) -> Union[int, list]:
        if self._a == 1:
            return x[0]
        return list(x)

    def from_json(self, obj) -> Raw:
        if isinstance(obj, list):
            return self.convert([int(c) for c in obj])
        return self.convert(int(obj))


@lru_cache(maxsize=None)
def witt_ring(p: int, a: int, prec: int) -> WittRing:
    return WittRing(p, a, prec)


def coefficient_ring(p: int, a: int = 1, prec: int = 1):
    """
    Returns Z/p^prec for a = 1 and the truncated Witt ring otherwise.
    """
    if a == 1:
        return padic_ring(p, prec)
    return witt_ring(p, a, prec)


class WittElem:
    """
    An element of the truncated Witt ring W_m(F_{p^a}).

    Parameters
    ----------
    value : int, Fraction, list or tuple
        A scalar or the coordinates in the basis 1, t, ..., t^(a-1).
    p : int
        A prime number.
    a : int
        The degree of the residue field.
    prec : int
        The precision m.
    """

    __slots__ = ("_ring", "_coeffs")

    def __init__(self, value, p: int, a: int, prec: int):
        self._ring = witt_ring(p, a, prec)
        self._coeffs = self._ring.convert(value)

    @classmethod
    def _make(cls, ring: WittRing, raw: Raw) -> "WittElem":
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._coeffs = raw
        return obj

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
    def coeffs(self) -> Raw:
        return self._coeffs

    @property
    def ring(self) -> WittRing:
        return self._ring

    def __repr__(self) -> str:
        return "WittElem({} + O({}^{}), a={})".format(
            list(self._coeffs), self.p, self.prec, self.degree
        )

    def _coerce(self, other):
        if isinstance(other, WittElem):
            if other.p != self.p or other.degree != self.degree:
                raise ParentMismatchError("Elements of different Witt rings.")
            ring = self._ring if self.prec <= other.prec else other._ring
            return (
                ring,
                ring.reduce(self._coeffs, ring.prec),
                ring.reduce(other._coeffs, ring.prec),
            )
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ParentMismatchError("Elements of different primes.")
            ring = self._ring if self.prec <= other.prec else other.ring
            ring = self._ring.with_precision(ring.prec)
            return ring, ring.reduce(self._coeffs, ring.prec), ring.base_element(other.value)
        if isinstance(other, (Integral, Rational)):
            return self._ring, self._coeffs, self._ring.convert(other)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return WittElem._make(ring, ring.add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return WittElem._make(ring, ring.sub(x, y))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return WittElem._make(ring, ring.sub(y, x))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return WittElem._make(ring, ring.mul(x, y))

    __rmul__ = __mul__

    def __neg__(self):
        return WittElem._make(self._ring, self._ring.neg(self._coeffs))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return WittElem._make(self._ring, self._ring.power(self._coeffs, n))

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        ring, x, y = c
        return WittElem._make(ring, ring.mul(x, ring.inverse(y)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (WittElem, PadicInt, Integral, Rational)):
            return NotImplemented
        _, x, y = self._coerce(other)
        return x == y

    def __hash__(self) -> int:
        return hash((self.p, self.degree, self._ring.residue(self._coeffs)))

    def __bool__(self) -> bool:
        return any(self._coeffs)

    def valuation(self) -> ExtendedNatural:
        return self._ring.valuation(self._coeffs)

    def is_unit(self) -> bool:
        return self._ring.is_unit(self._coeffs)

    def inverse(self) -> "WittElem":
        return WittElem._make(self._ring, self._ring.inverse(self._coeffs))

    def frobenius(self, k: int = 1) -> "WittElem":
        return WittElem._make(self._ring, self._ring.frobenius(self._coeffs, k))

    def teichmuller(self) -> "WittElem":
        return WittElem._make(self._ring, self._ring.teichmuller(self._coeffs))

    def reduce(self, prec: int) -> "WittElem":
        if prec > self.prec:
            raise ParentMismatchError("Cannot raise the precision.")
        ring = self._ring.with_precision(prec)
        return WittElem._make(ring, ring.reduce(self._coeffs, prec))

    def residue(self) -> Raw:
        return self._ring.residue(self._coeffs)

    def to_json(self):
        return self._ring.to_json(self._coeffs)


def witt_frobenius(w: WittElem) -> WittElem:
    """
    Returns σ(w), the Frobenius lift acting on W_m(F_{p^a}).

    It reduces to the p-power map on the residue field and σ^a is the
    identity.

    Examples
    --------
    >>> from k3arith.padic import WittElem, witt_frobenius
    >>> w = WittElem([2, 5], 3, 2, 8)
    >>> witt_frobenius(witt_frobenius(w)) == w
    True
    """
    return w.frobenius()
