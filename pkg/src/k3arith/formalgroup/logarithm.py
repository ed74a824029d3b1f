"""
Logarithms of formal group laws over the rationals and the expansions
derived from them.
"""
import logging
from fractions import Fraction
from typing import Dict, List

from ..constants import DEFAULT_TRUNCATION
from ..exceptions import PreconditionError
from ..padic import QQ, TruncSeries
from ..padic.valuation import vp_rational

__all__ = ["additive_log", "multiplicative_log", "honda_log", "LogExpansion"]

logger = logging.getLogger(__name__)


def additive_log(N: int = DEFAULT_TRUNCATION) -> TruncSeries:
    """The logarithm x of the additive law."""
    return TruncSeries(QQ, {1: 1}, trunc=N)


def multiplicative_log(N: int = DEFAULT_TRUNCATION) -> TruncSeries:
    """The logarithm log(1 + x) of the multiplicative law."""
    return TruncSeries(QQ, {n: Fraction((-1) ** (n + 1), n) for n in range(1, N)}, trunc=N)


def honda_log(h: int, p: int, N: int = DEFAULT_TRUNCATION) -> TruncSeries:
    """
    Returns the logarithm sum_i x^(p^(hi)) / p^i over the terms of degree
    below N, the logarithm of a law of height h.

    Examples
    --------
    >>> from k3arith.formalgroup import honda_log
    >>> honda_log(2, 2, 5).to_dict()
    {'1': '1', '4': '1/2'}
    """
    if h < 1:
        raise PreconditionError("The height must be a positive integer.")
    coeffs, i = {}, 0
    while p ** (h * i) < N:
        coeffs[p ** (h * i)] = Fraction(1, p**i)
        i += 1
    return TruncSeries(QQ, coeffs, trunc=N)


class LogExpansion:
    """
    The powers L^s of a logarithm L(x) = x + ... and its compositional
    inverse exp, truncated at degree N.

    Row s maps degrees to the coefficients of L^s. Since the rows are
    unitriangular, exp(L(x)) = x reads sum_n e_n L^n = x and is solved
    degree by degree.

    Parameters
    ----------
    log : TruncSeries
        A univariate series over the rationals with L(0) = 0 and L'(0) = 1.
    N : int, Optional
        The truncation degree. Default is that of the series.
    """

    def __init__(self, log: TruncSeries, N: int = None):
        if log.nvars != 1 or log.ring != QQ:
            raise PreconditionError("A logarithm is a univariate series over the rationals.")
        N = log.trunc if N is None else min(N, log.trunc)
        coeffs = {k[0]: Fraction(v) for k, v in log.raw.items() if k[0] < N}
        if coeffs.get(0, 0) != 0 or coeffs.get(1, 0) != 1:
            raise PreconditionError("A logarithm needs L(0) = 0 and L'(0) = 1.")
        self._N = N
        self._log = log.truncate(N)
        base = sorted(coeffs.items())
        rows: List[Dict[int, Fraction]] = [{0: Fraction(1)}]
        for s in range(1, N):
            prev, row = rows[-1], {}
            for i, a in prev.items():
                for j, b in base:
                    if i + j >= N:
                        break
                    row[i + j] = row.get(i + j, 0) + a * b
            rows.append({i: c for i, c in row.items() if c})
        self._rows = rows
        exp = [Fraction(0)] * N
        for i in range(1, N):
            acc = Fraction(int(i == 1))
            for n in range(1, i):
                if exp[n]:
                    acc -= exp[n] * rows[n].get(i, 0)
            exp[i] = acc
        self._exp = exp

    @property
    def trunc(self) -> int:
        return self._N

    @property
    def log(self) -> TruncSeries:
        return self._log

    @property
    def rows(self) -> List[Dict[int, Fraction]]:
        return self._rows

    @property
    def exp_coeffs(self) -> List[Fraction]:
        return self._exp

    def exp(self) -> TruncSeries:
        return TruncSeries(QQ, {n: c for n, c in enumerate(self._exp)}, trunc=self._N)

    def denominator_exponent(self, p: int) -> int:
        """The largest power of p in a denominator of exp or of a row."""
        vals = [vp_rational(c, p) for c in self._exp if c]
        vals += [vp_rational(c, p) for row in self._rows for c in row.values()]
        return max([0] + [-v for v in vals])

    def action_coefficients(self) -> Dict[int, Dict[int, Fraction]]:
        """
        Returns c[n][k] = e_k [x^n] L^k, so that exp(a L(x)) has the
        coefficient sum_k c[n][k] a^k at x^n.
        """
        out: Dict[int, Dict[int, Fraction]] = {}
        for k in range(1, self._N):
            e = self._exp[k]
            if not e:
                continue
            for n, c in self._rows[k].items():
                out.setdefault(n, {})[k] = e * c
        return out
