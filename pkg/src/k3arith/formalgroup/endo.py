"""
Multiplication series, height and the action of a coefficient ring on
a formal group law through its logarithm.
"""
import logging
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, List, NamedTuple, Union

import numpy as np
from linkeddeepdict import LinkedDeepDict

from ..constants import DEFAULT_SEED, DEFAULT_TRUNCATION
from ..exceptions import (
    NonIntegralError,
    ParentMismatchError,
    PrecisionError,
    PreconditionError,
    TruncationError,
)
from ..padic import PadicInt, TruncSeries, WittElem, coefficient_ring
from ..padic.valuation import AtLeast, is_certified, vp_int, vp_rational
from .law import FglHom, FormalGroupLaw, _verify_degree, honda_law

__all__ = [
    "n_series",
    "p_series",
    "height",
    "a_series",
    "reduction_check",
    "reduction_commutes",
    "LiftWithAction",
    "lift_with_action",
]

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, list, tuple, PadicInt, WittElem]


def n_series(F: FormalGroupLaw, n: int) -> TruncSeries:
    """
    Returns [n](x), the n-fold F-sum x +_F ... +_F x, computed by
    iterated substitution [k](x) = F([k-1](x), x).
    """
    n = int(n)
    if n < 0:
        raise PreconditionError("Only non-negative multiples are supported.")
    x = F.gen()
    if n == 0:
        return TruncSeries._from_raw(F.ring, {}, F.trunc, 1)
    result = x
    for _ in range(n - 1):
        result = F.add(result, x)
    return result


def p_series(F: FormalGroupLaw) -> TruncSeries:
    """
    Returns the multiplication-by-p series of a law.

    Examples
    --------
    >>> from k3arith.formalgroup import multiplicative_law, p_series
    >>> p_series(multiplicative_law(p=2, N=4, prec=6)).to_dict()
    {'1': 2, '2': 1}
    """
    return n_series(F, F.p)


def height(F: FormalGroupLaw) -> Union[int, AtLeast]:
    """
    Returns the height of a law: h such that [p](x) reduced modulo p
    starts with a nonzero multiple of x^(p^h).

    If [p](x) vanishes modulo p below the truncation degree N, the height
    exceeds log_p(N - 1) and `AtLeast` with that bound is returned.

    Raises
    ------
    TruncationError
        If N <= p, so that no power of p fits below the truncation.
    PreconditionError
        If [p](x) starts in a degree that is not a power of p.

    Examples
    --------
    >>> from k3arith.formalgroup import additive_law, height
    >>> height(additive_law(p=3, N=10))
    AtLeast(bound=3)
    """
    p, N = F.p, F.trunc
    if N <= p:
        raise TruncationError(trunc=N, p=p)
    F0 = F.reduce() if F.prec > 1 else F
    d = p_series(F0).lowest_degree()
    if d is None:
        k = 0
        while p ** (k + 1) <= N - 1:
            k += 1
        logger.debug("[p] vanishes mod p below degree %d", N)
        return AtLeast(k + 1)
    h, q = 0, 1
    while q < d:
        q *= p
        h += 1
    if q != d:
        raise PreconditionError("[p](x) mod p starts in degree {}, not a power of {}.".format(d, p))
    return h


def _lift_scalar(ring, a: Scalar):
    """
    Returns the raw form of a in the ring and the precision it is known
    to, None for exact input.
    """
    if isinstance(a, (PadicInt, WittElem)):
        if a.p != ring.p:
            raise ParentMismatchError("Elements of different primes.")
        return ring.from_json(a.to_json()), a.prec
    if isinstance(a, (list, tuple)) and ring.degree == 1:
        if any(a[1:]):
            raise PreconditionError("{} is not in Z_p.".format(list(a)))
        a = a[0] if a else 0
    if isinstance(a, (Integral, Rational, list, tuple)):
        return ring.convert(a), None
    raise TypeError("Cannot act with {}.".format(type(a)))


def a_series(F: FormalGroupLaw, a: Scalar) -> FglHom:
    """
    Returns the endomorphism [a](x) = exp(a·log(x)) of a law built from
    a logarithm.

    The coefficient of x^n is sum_k c[n][k] a^k with c[n][k] = e_k [x^n] L^k.
    These rationals may have powers of p in their denominators, so the
    sum is formed at a working precision raised by the largest such power
    and divided back.

    Integers, fractions and coefficient lists are exact and the result
    keeps the precision m of the law. A `PadicInt` or `WittElem` is only
    known modulo p^m', and a change of a by p^m' moves the term of a^k
    by p^(m' + min(v(k), m')) times c[n][k]. The result is returned at
    the precision that survives this loss, which is below m' whenever
    the denominators interfere.

    Raises
    ------
    PreconditionError
        If the law carries no logarithm.
    NonIntegralError
        If [a](x) is not integral, i.e. a does not act on the law.
    PrecisionError
        If no digit survives the loss.

    Examples
    --------
    >>> from k3arith.formalgroup import multiplicative_law, a_series
    >>> a_series(multiplicative_law(p=3, N=4, prec=5), 2).series.to_dict()
    {'1': 2, '2': 1}
    """
    expansion = F.expansion()
    R, p, m = F.ring, F.p, F.prec
    coeffs = expansion.action_coefficients()
    delta = 0
    for row in coeffs.values():
        for c in row.values():
            delta = max(delta, -vp_rational(c, p))
    W = R.with_precision(m + delta)
    raw, known = _lift_scalar(W, a)
    scale = p**delta
    powers = {0: W.one}
    for k in range(1, F.trunc):
        powers[k] = W.mul(powers[k - 1], raw)

    out, loss = {}, 0
    for n, row in sorted(coeffs.items()):
        acc = W.zero
        for k, c in row.items():
            acc = W.add(acc, W.mul(W.convert(c * scale), powers[k]))
            if known is not None:
                loss = max(loss, -vp_rational(c, p) - min(vp_int(k, p), known))
        v = W.valuation(acc)
        if is_certified(v) and v < delta:
            raise NonIntegralError("a does not act integrally", coefficient=n)
        out[(n,)] = W.divide_by_p(acc, delta)

    prec = m if known is None else min(m, known - loss)
    if prec <= 0:
        raise PrecisionError("insufficient precision: the action loses all digits")
    if prec < m:
        logger.debug("a_series drops from precision %d to %d", m, prec)
    S = R.with_precision(prec)
    series = TruncSeries._from_raw(S, {k: W.reduce(v, prec) for k, v in out.items()}, F.trunc, 1)
    law = F if prec == m else F.with_precision(prec)
    return FglHom(law, law, series)


def reduction_check(lift: FormalGroupLaw, endo: FglHom, degree: int = None) -> LinkedDeepDict:
    """
    Reduces a law and an endomorphism modulo p and checks that the result
    is still an endomorphism of the reduced law.

    Returns
    -------
    LinkedDeepDict
        `passed`, the verified `degree` and the first failing monomial of
        φ(F(x, y)) = F(φ(x), φ(y)) under `witness`.
    """
    if endo.ring.p != lift.p:
        raise ParentMismatchError("The law and the endomorphism have different primes.")
    F0 = lift.reduce()
    phi0 = endo.series.change_ring(F0.ring)
    d = _verify_degree(min(lift.trunc, endo.trunc), degree)
    witness = FglHom(F0, F0, phi0).defect(d)
    return LinkedDeepDict({"passed": witness is None, "degree": d, "witness": witness})


def reduction_commutes(lift: FormalGroupLaw, endo: FglHom, degree: int = None) -> bool:
    """
    Returns True if the reduction of `endo` modulo p is an endomorphism of
    the reduction of `lift`.
    """
    return bool(reduction_check(lift, endo, degree)["passed"])


class LiftWithAction(NamedTuple):
    """
    A law over W(F_(p^h)) with the endomorphisms of a set of ring
    elements, and the report of the identities they were checked against.
    """

    law: FormalGroupLaw
    actions: List[FglHom]
    report: LinkedDeepDict


def _exact(a: Scalar, h: int) -> list:
    if isinstance(a, (PadicInt, WittElem)):
        a = a.to_json()
    if isinstance(a, (list, tuple)):
        a = list(a)
    else:
        a = [a]
    if len(a) > h:
        raise PreconditionError("Too many coefficients for degree {}.".format(h))
    return [Fraction(c) if not isinstance(c, Integral) else int(c) for c in a] + [0] * (h - len(a))


def lift_with_action(
    h: int,
    p: int,
    m: int,
    N: int = DEFAULT_TRUNCATION,
    elements: Iterable[Scalar] = None,
    *,
    count: int = 10,
    rng=None,
    degree: int = None,
) -> LiftWithAction:
    """
    Builds the height h law of `honda_law` over W_m(F_(p^h)) and the
    endomorphisms [a] for ring elements a, and verifies them.

    Representatives of the elements are treated as exact. For each a the
    report records whether [a] is an endomorphism and whether its
    reduction is one of the reduced law. For consecutive pairs it records
    [a + b] = F([a], [b]) and [a]∘[b] = [ab], the latter at the precision
    of [ab], which is computed from the truncated product.

    Parameters
    ----------
    h : int
        The height, also the degree of the residue field.
    p : int
        The prime.
    m : int
        The precision.
    N : int, Optional
        The truncation degree. Default is `DEFAULT_TRUNCATION`.
    elements : Iterable, Optional
        Integers, fractions or coefficient lists of length at most h.
        Default is `count` random elements.
    count : int, Optional
        The number of random elements. Default is 10.
    rng : numpy.random.Generator, Optional
        The source of random elements. Default is seeded with `DEFAULT_SEED`.
    degree : int, Optional
        The degree up to which identities are verified.

    Examples
    --------
    >>> from k3arith.formalgroup import lift_with_action
    >>> result = lift_with_action(2, 2, 6, 17, count=2)
    >>> result.report["passed"]
    True
    """
    ring = coefficient_ring(p, h, m)
    F = honda_law(h, ring, N, degree=degree)
    if elements is None:
        rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
        elements = [[int(rng.integers(0, p**m)) for _ in range(h)] for _ in range(count)]
    elements = [_exact(a, h) for a in elements]
    d = _verify_degree(F.trunc, degree)

    actions, entries = [], []
    for a in elements:
        A = a_series(F, a)
        actions.append(A)
        entries.append(
            {
                "a": [str(c) for c in a],
                "endomorphism": A.defect(d) is None,
                "reduction": dict(reduction_check(F, A, d)),
            }
        )
    pairs = []
    for i in range(len(elements) - 1):
        a, b = elements[i], elements[i + 1]
        A, B = actions[i], actions[i + 1]
        total = a_series(F, [x + y for x, y in zip(a, b)])
        additive = F.add(A.series, B.series) == total.series
        ab = ring.element(ring.mul(_lift_scalar(ring, a)[0], _lift_scalar(ring, b)[0]))
        AB = a_series(F, ab)
        composed = A.compose(B).with_precision(AB.prec)
        pairs.append(
            {
                "index": i,
                "additive": additive,
                "multiplicative": composed.series == AB.series,
                "precision": AB.prec,
            }
        )
    passed = all(e["endomorphism"] and e["reduction"]["passed"] for e in entries) and all(
        q["additive"] and q["multiplicative"] for q in pairs
    )
    report = LinkedDeepDict(
        {
            "p": p,
            "height": h,
            "precision": m,
            "trunc": F.trunc,
            "degree": d,
            "passed": passed,
            "actions": entries,
            "pairs": pairs,
        }
    )
    logger.debug("lift with action at p=%d, h=%d: passed=%s", p, h, passed)
    return LiftWithAction(F, actions, report)
