import logging
from fractions import Fraction
from math import comb
from typing import List, Union

from linkeddeepdict import LinkedDeepDict

from ..constants import DEFAULT_PRECISION, DEFAULT_TRUNCATION
from ..exceptions import NonIntegralError, ParentMismatchError, PreconditionError
from ..padic import QQ, TruncSeries, coefficient_ring, padic_ring
from ..padic.valuation import vp_rational
from .logarithm import LogExpansion, additive_log, honda_log, multiplicative_log

__all__ = [
    "FormalGroupLaw",
    "FglHom",
    "fgl_from_log",
    "additive_law",
    "multiplicative_law",
    "honda_law",
]

logger = logging.getLogger(__name__)


def _verify_degree(trunc: int, degree: int = None) -> int:
    # every monomial below the truncation unless a smaller degree is asked for
    top = max(1, trunc - 1)
    return top if degree is None else max(1, min(int(degree), top))


def _first_mismatch(lhs: TruncSeries, rhs: TruncSeries, degree: int):
    """
    Returns the exponent of the first monomial of total degree at most
    `degree` where two series differ, or None.
    """
    R = lhs.ring
    a = {k: v for k, v in lhs.raw.items() if sum(k) <= degree}
    b = {k: v for k, v in rhs.raw.items() if sum(k) <= degree}
    for k in sorted(set(a) | set(b), key=lambda k: (sum(k), k)):
        if a.get(k, R.zero) != b.get(k, R.zero):
            return list(k)
    return None


def _embed(u: TruncSeries, idx: tuple, nvars: int) -> TruncSeries:
    # the j-th variable of u becomes the idx[j]-th of nvars variables
    raw = {}
    for k, v in u.raw.items():
        e = [0] * nvars
        for i, t in zip(idx, k):
            e[i] = t
        raw[tuple(e)] = v
    return TruncSeries._from_raw(u.ring, raw, u.trunc, nvars)


class FormalGroupLaw:
    """
    A one-dimensional commutative formal group law F(x, y) over Z/p^m or
    a truncated Witt ring, carried as a bivariate series truncated at
    total degree N.

    The axioms F(x, 0) = x, F(x, y) = F(y, x) and
    F(F(x, y), z) = F(x, F(y, z)) are checked on construction for every
    monomial of total degree below N. Laws built from a logarithm keep
    it, which is what `a_series` needs.

    Parameters
    ----------
    series : TruncSeries
        The bivariate series F(x, y).
    log : TruncSeries, Optional
        The logarithm over the rationals the law comes from.
    verify : bool, Optional
        Whether to check the axioms. Default is True.
    degree : int, Optional
        Checks the axioms only up to this total degree. Default is N - 1.

    Raises
    ------
    PreconditionError
        If the series is not bivariate or an axiom fails.
    """

    __slots__ = ("_series", "_log", "_expansion", "_powers", "_reduced")

    def __init__(
        self,
        series: TruncSeries,
        log: TruncSeries = None,
        verify: bool = True,
        degree: int = None,
    ):
        if series.nvars != 2:
            raise PreconditionError("A formal group law is a bivariate series.")
        if series.ring == QQ:
            raise PreconditionError("A formal group law needs a p-adic coefficient ring.")
        self._series = series
        self._log = log
        self._expansion = None
        self._powers = None
        self._reduced = None
        if verify:
            report = self.check_axioms(degree)
            if not report["passed"]:
                raise PreconditionError(
                    "Not a formal group law: {}".format(report["witness"]), report=dict(report)
                )

    @property
    def series(self) -> TruncSeries:
        return self._series

    @property
    def ring(self):
        return self._series.ring

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def degree(self) -> int:
        return self.ring.degree

    @property
    def prec(self) -> int:
        return self.ring.prec

    @property
    def trunc(self) -> int:
        return self._series.trunc

    @property
    def log(self) -> Union[TruncSeries, None]:
        return self._log

    def expansion(self) -> LogExpansion:
        if self._log is None:
            raise PreconditionError("The law carries no logarithm.")
        if self._expansion is None:
            self._expansion = LogExpansion(self._log, self.trunc)
        return self._expansion

    def gen(self, i: int = 0, nvars: int = 1) -> TruncSeries:
        return TruncSeries.gen(self.ring, self.trunc, i, nvars)

    def __call__(self, u: TruncSeries, v: TruncSeries) -> TruncSeries:
        return self.add(u, v)

    def add(self, u: TruncSeries, v: TruncSeries) -> TruncSeries:
        """Returns F(u, v) for series u, v without constant term."""
        return self._series.substitute(u, v)

    def powers(self, degree: int = None) -> List[TruncSeries]:
        """
        Returns F^0, ..., F^d truncated above total degree d, d being the
        verification degree. The table is kept on the law and shared by
        the associativity check and the homomorphism identities.
        """
        d = _verify_degree(self.trunc, degree)
        if self._powers is None or len(self._powers) <= d:
            F = self._series.truncate(d + 1)
            table = [TruncSeries.constant(1, self.ring, d + 1, 2)]
            for _ in range(d):
                table.append(table[-1] * F)
            self._powers = table
        return [P.truncate(d + 1) for P in self._powers[: d + 1]]

    def _associativity(self, d: int):
        # F(F(x, y), z) = sum_i F(x, y)^i c_i(z), F(x, F(y, z)) = sum_j c_j(x) F(y, z)^j
        R = self.ring
        P = self.powers(d)
        by_x, by_y = {}, {}
        for (i, j), v in self._series.raw.items():
            if i + j <= d:
                by_x.setdefault(i, {})[(0, 0, j)] = v
                by_y.setdefault(j, {})[(i, 0, 0)] = v
        left = TruncSeries._from_raw(R, {}, d + 1, 3)
        for i, raw in by_x.items():
            left = left + _embed(P[i], (0, 1), 3) * TruncSeries._from_raw(R, raw, d + 1, 3)
        right = TruncSeries._from_raw(R, {}, d + 1, 3)
        for j, raw in by_y.items():
            right = right + _embed(P[j], (1, 2), 3) * TruncSeries._from_raw(R, raw, d + 1, 3)
        return _first_mismatch(left, right, d)

    def check_axioms(self, degree: int = None) -> LinkedDeepDict:
        """
        Checks the unit, commutativity and associativity axioms for all
        monomials up to the given total degree, by default every monomial
        below the truncation.

        Returns
        -------
        LinkedDeepDict
            The outcome of each axiom, `passed` and the first failing
            monomial under `witness`.
        """
        d = _verify_degree(self.trunc, degree)
        F = self._series.truncate(d + 1)
        R = F.ring
        x = TruncSeries.gen(R, d + 1)
        zero = TruncSeries._from_raw(R, {}, d + 1, 1)
        report = LinkedDeepDict({"degree": d, "witness": None})
        unit = _first_mismatch(F.substitute(x, zero), x, d)
        comm = _first_mismatch(F, F.swap(), d)
        assoc = self._associativity(d)
        report["unit"] = unit is None
        report["commutative"] = comm is None
        report["associative"] = assoc is None
        report["passed"] = unit is None and comm is None and assoc is None
        for name, w in (("unit", unit), ("commutative", comm), ("associative", assoc)):
            if w is not None:
                report["witness"] = {"axiom": name, "monomial": w}
                break
        return report

    def change_ring(self, ring) -> "FormalGroupLaw":
        """
        Returns the law over another ring of the same prime, e.g. at a
        lower precision or over a Witt ring containing this one.
        """
        if ring.p != self.p:
            raise ParentMismatchError("Rings of different primes.")
        return FormalGroupLaw(self._series.change_ring(ring), self._log, verify=False)

    def with_precision(self, prec: int) -> "FormalGroupLaw":
        if prec > self.prec:
            raise PreconditionError("Cannot raise the precision of a law.")
        return self.change_ring(self.ring.with_precision(prec))

    def reduce(self) -> "FormalGroupLaw":
        """Returns the law over the residue field."""
        if self._reduced is None:
            S = self.ring.with_precision(1)
            self._reduced = FormalGroupLaw(self._series.change_ring(S), verify=False)
        return self._reduced

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalGroupLaw):
            return NotImplemented
        return self._series == other._series and self.trunc == other.trunc

    __hash__ = None

    def __repr__(self) -> str:
        return "FormalGroupLaw(p={}, a={}, prec={}, trunc={})".format(
            self.p, self.degree, self.prec, self.trunc
        )

    def to_dict(self) -> dict:
        d = {
            "p": self.p,
            "a": self.degree,
            "precision": self.prec,
            "trunc": self.trunc,
            "F": self._series.to_dict(),
        }
        if self._log is not None:
            d["log"] = self._log.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict, verify: bool = True, degree: int = None) -> "FormalGroupLaw":
        ring = coefficient_ring(int(d["p"]), int(d.get("a", 1)), int(d["precision"]))
        N = int(d["trunc"])
        series = TruncSeries.from_dict(d["F"], ring, N, 2)
        log = None
        if d.get("log") is not None:
            log = TruncSeries.from_dict(d["log"], QQ, N, 1)
        return cls(series, log, verify=verify, degree=degree)


class FglHom:
    """
    A homomorphism φ: F → G of formal group laws, a univariate series
    with φ(F(x, y)) = G(φ(x), φ(y)).

    Parameters
    ----------
    source : FormalGroupLaw
        The law F.
    target : FormalGroupLaw
        The law G, over the same ring as F.
    series : TruncSeries
        The series φ over that ring.
    """

    __slots__ = ("_source", "_target", "_series")

    def __init__(self, source: FormalGroupLaw, target: FormalGroupLaw, series: TruncSeries):
        if source.ring != target.ring or series.ring != source.ring:
            raise ParentMismatchError("A homomorphism lives over the ring of its laws.")
        if series.nvars != 1:
            raise PreconditionError("A homomorphism is a univariate series.")
        self._source = source
        self._target = target
        self._series = series

    @property
    def source(self) -> FormalGroupLaw:
        return self._source

    @property
    def target(self) -> FormalGroupLaw:
        return self._target

    @property
    def series(self) -> TruncSeries:
        return self._series

    @property
    def ring(self):
        return self._series.ring

    @property
    def prec(self) -> int:
        return self.ring.prec

    @property
    def trunc(self) -> int:
        return self._series.trunc

    def __call__(self, u: TruncSeries) -> TruncSeries:
        return self._series.compose(u)

    def compose(self, other: "FglHom") -> "FglHom":
        """
        Returns self ∘ other, at the lower of the two precisions.
        """
        prec = min(self.prec, other.prec)
        a, b = self.with_precision(prec), other.with_precision(prec)
        return FglHom(b.source, a.target, a.series.compose(b.series))

    def defect(self, degree: int = None):
        """
        Returns the first monomial where φ(F(x, y)) and G(φ(x), φ(y))
        differ, or None. Every monomial below the truncation is compared
        unless a smaller degree is given.
        """
        F, G = self._source, self._target
        d = _verify_degree(min(self.trunc, F.trunc, G.trunc), degree)
        R = self.ring
        phi = self._series.truncate(d + 1)
        P = F.powers(d)
        lhs = TruncSeries._from_raw(R, {}, d + 1, 2)
        for (k,), a in phi.raw.items():
            lhs = lhs + P[k].scale_raw(a)
        rhs = G.series.truncate(d + 1).substitute(_embed(phi, (0,), 2), _embed(phi, (1,), 2))
        return _first_mismatch(lhs, rhs, d)

    def is_homomorphism(self, degree: int = None) -> bool:
        return self.defect(degree) is None

    def with_precision(self, prec: int) -> "FglHom":
        if prec == self.prec:
            return self
        if prec > self.prec:
            raise PreconditionError("Cannot raise the precision of a homomorphism.")
        S = self.ring.with_precision(prec)
        return FglHom(
            self._source.change_ring(S),
            self._target.change_ring(S),
            self._series.change_ring(S),
        )

    def reduce(self) -> "FglHom":
        """Returns the homomorphism between the laws over the residue field."""
        S = self.ring.with_precision(1)
        return FglHom(self._source.reduce(), self._target.reduce(), self._series.change_ring(S))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FglHom):
            return NotImplemented
        return self._series == other._series

    __hash__ = None

    def __repr__(self) -> str:
        return "FglHom(p={}, prec={}, trunc={})".format(self.ring.p, self.prec, self.trunc)

    def to_dict(self) -> dict:
        return {
            "p": self.ring.p,
            "a": self.ring.degree,
            "precision": self.prec,
            "trunc": self.trunc,
            "phi": self._series.to_dict(),
            "source": self._source.to_dict(),
            "target": self._target.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FglHom":
        source = FormalGroupLaw.from_dict(d["source"], verify=False)
        target = FormalGroupLaw.from_dict(d["target"], verify=False)
        series = TruncSeries.from_dict(d["phi"], source.ring, int(d["trunc"]), 1)
        return cls(source, target, series)


def _ring(ring=None, p: int = None, prec: int = DEFAULT_PRECISION):
    if ring is not None:
        return ring
    if p is None:
        raise PreconditionError("Either a ring or a prime is required.")
    return padic_ring(int(p), int(prec))


def fgl_from_log(
    log: TruncSeries,
    N: int = None,
    ring=None,
    *,
    p: int = None,
    prec: int = DEFAULT_PRECISION,
    verify: bool = True,
    degree: int = None,
) -> FormalGroupLaw:
    """
    Returns the law F(x, y) = exp(log x + log y), truncated at degree N,
    over a p-adic coefficient ring.

    With L^s = sum_i P[s][i] x^i and exp = sum_n e_n x^n,

        F(x, y) = sum_n e_n sum_(s+t=n) C(n, s) L(x)^s L(y)^t,

    so the coefficient of x^i y^j is sum_(s,t) P[s][i] e_(s+t) C(s+t, s) P[t][j].
    The sum is exact over the rationals. Denominators prime to p are
    inverted in the ring; a power of p left in a denominator means the
    law is not integral.

    Parameters
    ----------
    log : TruncSeries
        A univariate series over the rationals with L(0) = 0, L'(0) = 1.
    N : int, Optional
        The truncation degree. Default is that of the logarithm.
    ring : PadicRing or WittRing, Optional
        The coefficient ring. If omitted, Z/p^prec is used.
    p : int, Optional
        The prime, if no ring is given.
    prec : int, Optional
        The precision, if no ring is given. Default is `DEFAULT_PRECISION`.
    verify : bool, Optional
        Whether to check the axioms. Default is True.
    degree : int, Optional
        Checks the axioms only up to this total degree. Default is N - 1.

    Raises
    ------
    NonIntegralError
        If a coefficient of the law has p in its denominator.

    Examples
    --------
    >>> from k3arith.formalgroup import fgl_from_log, multiplicative_log
    >>> F = fgl_from_log(multiplicative_log(4), p=5, prec=4)
    >>> F.series.to_dict()
    {'0,1': 1, '1,0': 1, '1,1': 1}
    """
    ring = _ring(ring, p, prec)
    p = ring.p
    expansion = LogExpansion(log, N)
    N = expansion.trunc
    rows, e = expansion.rows, expansion.exp_coeffs
    logger.debug(
        "law from a logarithm at p=%d, N=%d: denominators up to p^%d cleared",
        p,
        N,
        expansion.denominator_exponent(p),
    )
    # rows sorted by degree so that the truncation can break early
    srows = [sorted(row.items()) for row in rows]
    coeffs = {}
    for n in range(1, N):
        if not e[n]:
            continue
        for s in range(n + 1):
            c = e[n] * comb(n, s)
            right = srows[n - s]
            for i, a in srows[s]:
                if i + right[0][0] >= N:
                    break
                ca = c * a
                for j, b in right:
                    if i + j >= N:
                        break
                    coeffs[(i, j)] = coeffs.get((i, j), 0) + ca * b
    raw = {}
    for k, v in coeffs.items():
        if not v:
            continue
        if vp_rational(v, p) < 0:
            raise NonIntegralError(coefficient=list(k), value=str(Fraction(v)))
        raw[k] = ring.convert(Fraction(v))
    series = TruncSeries._from_raw(ring, raw, N, 2)
    return FormalGroupLaw(series, expansion.log, verify=verify, degree=degree)


def additive_law(
    ring=None, N: int = DEFAULT_TRUNCATION, *, p: int = None, prec: int = DEFAULT_PRECISION
) -> FormalGroupLaw:
    """The law x + y."""
    return fgl_from_log(additive_log(N), N, _ring(ring, p, prec))


def multiplicative_law(
    ring=None, N: int = DEFAULT_TRUNCATION, *, p: int = None, prec: int = DEFAULT_PRECISION
) -> FormalGroupLaw:
    """The law x + y + xy, with logarithm log(1 + x)."""
    return fgl_from_log(multiplicative_log(N), N, _ring(ring, p, prec))


def honda_law(
    h: int,
    ring=None,
    N: int = DEFAULT_TRUNCATION,
    *,
    p: int = None,
    prec: int = DEFAULT_PRECISION,
    verify: bool = True,
    degree: int = None,
) -> FormalGroupLaw:
    """
    Returns the law of height h with logarithm sum_i x^(p^(hi)) / p^i.

    The axioms are checked below degree N unless `verify` is False or a
    smaller `degree` is given.

    Examples
    --------
    >>> from k3arith.formalgroup import honda_law, height
    >>> height(honda_law(2, p=3, N=28, prec=4))
    2
    """
    ring = _ring(ring, p, prec)
    return fgl_from_log(honda_log(h, ring.p, N), N, ring, verify=verify, degree=degree)
