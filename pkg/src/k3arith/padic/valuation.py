from fractions import Fraction
from numbers import Integral
from typing import NamedTuple, Union


class AtLeast(NamedTuple):
    """
    A valuation that is only known from below, as it happens for
    elements indistinguishable from zero at the working precision.

    Examples
    --------
    >>> from k3arith.padic import AtLeast
    >>> str(AtLeast(6))
    '≥ 6'
    """

    bound: int

    def __str__(self) -> str:
        return "≥ {}".format(self.bound)

    def to_dict(self) -> dict:
        return {"at_least": self.bound}


ExtendedNatural = Union[int, AtLeast]


def vp_int(n: int, p: int) -> int:
    """
    Returns the exponent of the largest power of `p` dividing the nonzero
    integer `n`.
    """
    if n == 0:
        raise ValueError("The valuation of 0 is infinite.")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_rational(x: Fraction, p: int) -> int:
    """
    Returns the p-adic valuation of a nonzero rational number.
    """
    x = Fraction(x)
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def vp_residue(value: int, p: int, prec: int) -> ExtendedNatural:
    """
    Returns the valuation of a residue modulo p^prec, or `AtLeast(prec)`
    if the residue is zero.
    """
    value %= p**prec
    if value == 0:
        return AtLeast(prec)
    return vp_int(value, p)


def is_certified(v: ExtendedNatural) -> bool:
    return not isinstance(v, AtLeast)


def val_p(x, p: int = None) -> ExtendedNatural:
    """
    Returns the p-adic valuation of an element.

    Truncated elements (`PadicInt`, `WittElem`) carry their own prime and
    precision and return `AtLeast(m)` when they are zero modulo p^m.
    Integers and fractions need the prime as a second argument.

    Parameters
    ----------
    x : PadicInt, WittElem, int or Fraction
        The element.
    p : int, Optional
        The prime, only for integers and fractions.

    Examples
    --------
    >>> from k3arith.padic import PadicInt, val_p
    >>> val_p(PadicInt(50, 5, 6))
    2
    >>> val_p(PadicInt(0, 5, 6))
    AtLeast(bound=6)
    """
    if hasattr(x, "valuation"):
        return x.valuation()
    if p is None:
        raise TypeError("A prime is required for plain numbers.")
    if isinstance(x, Integral):
        return vp_int(int(x), p)
    return vp_rational(Fraction(x), p)
