from numbers import Integral
from typing import Dict, Iterable, Tuple, Union

from ..constants import DEFAULT_TRUNCATION
from ..exceptions import NotReversibleError, ParentMismatchError
from .rational import QQ

__all__ = ["TruncSeries", "series_reverse"]

Key = Tuple[int, ...]


def _key(k, nvars: int) -> Key:
    if isinstance(k, Integral):
        k = (int(k),)
    elif isinstance(k, str):
        k = tuple(int(s) for s in k.split(","))
    k = tuple(k)
    if len(k) != nvars:
        raise KeyError("Expected {} exponents, got {}.".format(nvars, k))
    return k


class TruncSeries:
    """
    A power series in one or more variables, truncated at total degree N.

    Coefficients live in a coefficient ring: `QQ`, a `PadicRing` or
    a `WittRing`. Only monomials of total degree < N are stored, zero
    coefficients are dropped, and binary operations truncate to the
    smaller of the two bounds.

    Parameters
    ----------
    ring : RationalField, PadicRing or WittRing
        The coefficient ring.
    coeffs : dict, Optional
        Exponents mapped to coefficients. Univariate exponents may be
        integers, multivariate ones tuples or strings like "2,1".
    trunc : int, Optional
        The truncation degree N. Default is `DEFAULT_TRUNCATION`.
    nvars : int, Optional
        The number of variables. Default is 1.

    Examples
    --------
    >>> from fractions import Fraction
    >>> from k3arith.padic import TruncSeries, QQ, series_reverse
    >>> f = TruncSeries(QQ, {1: 1, 2: 1}, trunc=4)
    >>> g = series_reverse(f)
    >>> [g[i] for i in range(4)]
    [Fraction(0, 1), Fraction(1, 1), Fraction(-1, 1), Fraction(2, 1)]
    """

    __slots__ = ("_ring", "_trunc", "_nvars", "_c")

    def __init__(
        self,
        ring=QQ,
        coeffs: dict = None,
        trunc: int = DEFAULT_TRUNCATION,
        nvars: int = 1,
    ):
        self._ring = ring
        self._trunc = int(trunc)
        self._nvars = int(nvars)
        c = {}
        if coeffs is not None:
            for k, v in coeffs.items():
                k = _key(k, nvars)
                if sum(k) < self._trunc:
                    raw = ring.convert(v)
                    if not ring.is_zero(raw):
                        c[k] = raw
        self._c = c

    @classmethod
    def _from_raw(cls, ring, raw: Dict[Key, object], trunc: int, nvars: int):
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._trunc = trunc
        obj._nvars = nvars
        obj._c = {k: v for k, v in raw.items() if sum(k) < trunc and not ring.is_zero(v)}
        return obj

    @classmethod
    def gen(cls, ring=QQ, trunc: int = DEFAULT_TRUNCATION, i: int = 0, nvars: int = 1):
        """Returns the i-th variable."""
        k = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._from_raw(ring, {k: ring.one}, trunc, nvars)

    @classmethod
    def constant(cls, value, ring=QQ, trunc: int = DEFAULT_TRUNCATION, nvars: int = 1):
        return cls._from_raw(ring, {(0,) * nvars: ring.convert(value)}, trunc, nvars)

    @property
    def ring(self):
        return self._ring

    @property
    def trunc(self) -> int:
        return self._trunc

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def raw(self) -> Dict[Key, object]:
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __repr__(self) -> str:
        terms = ", ".join(
            "{}: {}".format(k[0] if self._nvars == 1 else k, self._ring.to_json(v))
            for k, v in sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        )
        return "TruncSeries({{{}}} + O(deg {}), {})".format(terms, self._trunc, self._ring)

    def __getitem__(self, key):
        raw = self._c.get(_key(key, self._nvars), self._ring.zero)
        return self._ring.element(raw)

    def items(self):
        """Yields (exponent, element) pairs in order of total degree."""
        for k in sorted(self._c, key=lambda k: (sum(k), k)):
            yield k, self._ring.element(self._c[k])

    def degrees(self) -> Iterable[int]:
        return sorted({sum(k) for k in self._c})

    def lowest_degree(self) -> Union[int, None]:
        """Returns the least total degree of a nonzero term, or None."""
        return min((sum(k) for k in self._c), default=None)

    def is_zero(self) -> bool:
        return not self._c

    def _check(self, other: "TruncSeries"):
        if other._ring != self._ring:
            raise ParentMismatchError(
                "Series over {} and {}.".format(self._ring, other._ring)
            )
        if other._nvars != self._nvars:
            raise ParentMismatchError("Series in different numbers of variables.")
        return min(self._trunc, other._trunc)

    def _scalar_raw(self, value):
        if isinstance(value, TruncSeries):
            return None
        try:
            return self._ring.convert(value)
        except (TypeError, ParentMismatchError):
            return None

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            raw = self._scalar_raw(other)
            if raw is None:
                return NotImplemented
            other = TruncSeries._from_raw(self._ring, {(0,) * self._nvars: raw}, self._trunc, self._nvars)
        N = self._check(other)
        R = self._ring
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = R.add(out[k], v) if k in out else v
        return TruncSeries._from_raw(R, out, N, self._nvars)

    __radd__ = __add__

    def __neg__(self):
        R = self._ring
        return TruncSeries._from_raw(
            R, {k: R.neg(v) for k, v in self._c.items()}, self._trunc, self._nvars
        )

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            raw = self._scalar_raw(other)
            if raw is None:
                return NotImplemented
            other = TruncSeries._from_raw(self._ring, {(0,) * self._nvars: raw}, self._trunc, self._nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            raw = self._scalar_raw(other)
            if raw is None:
                return NotImplemented
            return self.scale_raw(raw)
        N = self._check(other)
        return TruncSeries._from_raw(
            self._ring, _mul(self._ring, self._c, other._c, N), N, self._nvars
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries.constant(1, self._ring, self._trunc, self._nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other._nvars != self._nvars or other._ring != self._ring:
            return False
        N = min(self._trunc, other._trunc)
        a = {k: v for k, v in self._c.items() if sum(k) < N}
        b = {k: v for k, v in other._c.items() if sum(k) < N}
        return a == b

    __hash__ = None

    def scale_raw(self, raw):
        R = self._ring
        return TruncSeries._from_raw(
            R, {k: R.mul(raw, v) for k, v in self._c.items()}, self._trunc, self._nvars
        )

    def truncate(self, N: int) -> "TruncSeries":
        return TruncSeries._from_raw(self._ring, self._c, min(N, self._trunc), self._nvars)

    def change_ring(self, ring) -> "TruncSeries":
        """
        Returns the series with coefficients converted into another ring,
        e.g. reduced to a lower precision or embedded into a Witt ring.
        """
        src = self._ring
        out = {k: ring.convert(src.element(v)) for k, v in self._c.items()}
        return TruncSeries._from_raw(ring, out, self._trunc, self._nvars)

    def derivative(self, i: int = 0) -> "TruncSeries":
        R = self._ring
        out = {}
        for k, v in self._c.items():
            if k[i]:
                kk = k[:i] + (k[i] - 1,) + k[i + 1 :]
                out[kk] = R.scalar(k[i], v)
        return TruncSeries._from_raw(R, out, self._trunc - 1 if self._trunc > 0 else 0, self._nvars)

    def inverse(self) -> "TruncSeries":
        """
        Returns the multiplicative inverse of a univariate series with
        invertible constant term.
        """
        if self._nvars != 1:
            raise NotImplementedError("Only univariate series can be inverted.")
        R = self._ring
        a0 = self._c.get((0,), R.zero)
        inv0 = R.inverse(a0)
        N = self._trunc
        a = [self._c.get((i,), R.zero) for i in range(N)]
        nz = [i for i in range(1, N) if not R.is_zero(a[i])]
        h = [R.zero] * N
        h[0] = inv0
        for n in range(1, N):
            acc = R.zero
            for i in nz:
                if i > n:
                    break
                acc = R.add(acc, R.mul(a[i], h[n - i]))
            h[n] = R.neg(R.mul(inv0, acc))
        return TruncSeries._from_raw(R, {(i,): c for i, c in enumerate(h)}, N, 1)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """
        Returns f(g) for a univariate series f and a series g without
        constant term.
        """
        if self._nvars != 1:
            raise ValueError("Use `substitute` for multivariate series.")
        return self.substitute(g)

    def substitute(self, *args: "TruncSeries") -> "TruncSeries":
        """
        Returns F(u_1, ..., u_k) for series u_i without constant term,
        all in the same variables. The truncation of the result is the
        smallest of the bounds involved.
        """
        if len(args) != self._nvars:
            raise ValueError("Expected {} series, got {}.".format(self._nvars, len(args)))
        R = self._ring
        out_nvars = args[0]._nvars
        N = self._trunc
        for u in args:
            if u._ring != R or u._nvars != out_nvars:
                raise ParentMismatchError("Arguments of a substitution must match.")
            if not R.is_zero(u._c.get((0,) * out_nvars, R.zero)):
                raise ValueError("Substituted series must have no constant term.")
            N = min(N, u._trunc)
        powers = [_Powers(R, u, N) for u in args]
        one = {(0,) * out_nvars: R.one}
        # group by the exponent of the first variable: sum_i u_1^i * W_i
        groups = {}
        for k, v in self._c.items():
            if sum(k) < N:
                groups.setdefault(k[0], []).append((k[1:], v))
        result = {}
        for i, terms in groups.items():
            inner = {}
            for rest, v in terms:
                part = one
                for j, e in enumerate(rest):
                    if e:
                        part = _mul(R, part, powers[j + 1][e], N)
                for kk, c in part.items():
                    t = R.mul(v, c)
                    inner[kk] = R.add(inner[kk], t) if kk in inner else t
            term = _mul(R, powers[0][i], inner, N) if i else inner
            for kk, c in term.items():
                result[kk] = R.add(result[kk], c) if kk in result else c
        return TruncSeries._from_raw(R, result, N, out_nvars)

    def swap(self) -> "TruncSeries":
        """Returns F(y, x) for a bivariate series F(x, y)."""
        return TruncSeries._from_raw(
            self._ring, {(k[1], k[0]): v for k, v in self._c.items()}, self._trunc, 2
        )

    def to_dict(self) -> dict:
        R = self._ring
        return {
            ",".join(str(e) for e in k): R.to_json(v)
            for k, v in sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        }

    @classmethod
    def from_dict(cls, d: dict, ring, trunc: int, nvars: int) -> "TruncSeries":
        raw = {_key(k, nvars): ring.from_json(v) for k, v in d.items()}
        return cls._from_raw(ring, raw, trunc, nvars)


class _Powers:
    """Lazily computed powers of a series, truncated at N."""

    def __init__(self, ring, u: TruncSeries, N: int):
        self._ring = ring
        self._N = N
        self._base = {k: v for k, v in u._c.items() if sum(k) < N}
        self._cache = {1: self._base}

    def __getitem__(self, n: int):
        if n in self._cache:
            return self._cache[n]
        below = max(k for k in self._cache if k < n)
        res = self._cache[below]
        # extend by repeated multiplication with the base
        for e in range(below + 1, n + 1):
            res = _mul(self._ring, res, self._base, self._N)
            self._cache[e] = res
        return res


def _mul(ring, a: dict, b: dict, N: int) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bi = sorted(((sum(k), k, v) for k, v in b.items()), key=lambda t: t[0])
    add, mul = ring.add, ring.mul
    out = {}
    for ka, va in a.items():
        da = sum(ka)
        if da >= N:
            continue
        for db, kb, vb in bi:
            if da + db >= N:
                break
            k = tuple(x + y for x, y in zip(ka, kb))
            t = mul(va, vb)
            out[k] = add(out[k], t) if k in out else t
    return {k: v for k, v in out.items() if not ring.is_zero(v)}


def series_reverse(f: TruncSeries, N: int = None) -> TruncSeries:
    """
    Returns the compositional inverse g of a univariate series f with
    f(0) = 0 and invertible linear coefficient, so that f(g(x)) = x
    modulo degree N.

    The inverse is computed by Newton iteration, doubling the number of
    correct coefficients in every step.

    Parameters
    ----------
    f : TruncSeries
        A univariate series.
    N : int, Optional
        The truncation degree of the result. Default is that of `f`.

    Raises
    ------
    NotReversibleError
        If the linear coefficient of `f` is not invertible.

    Examples
    --------
    >>> from k3arith.padic import TruncSeries, QQ, series_reverse
    >>> x = TruncSeries.gen(QQ, 6)
    >>> series_reverse(x) == x
    True
    """
    if f.nvars != 1:
        raise ValueError("Only univariate series can be reversed.")
    R = f.ring
    N = f.trunc if N is None else min(N, f.trunc)
    if not R.is_zero(f.raw.get((0,), R.zero)):
        raise NotReversibleError("not reversible: nonzero constant term")
    c1 = f.raw.get((1,), R.zero)
    if not R.is_unit(c1):
        raise NotReversibleError("not reversible")
    if N <= 2:
        return TruncSeries._from_raw(R, {(1,): R.inverse(c1)}, N, 1)
    fN = f.truncate(N)
    df = fN.derivative()
    x = TruncSeries.gen(R, N)
    g = TruncSeries._from_raw(R, {(1,): R.inverse(c1)}, 2, 1)
    prec = 2
    while prec < N:
        prec = min(2 * prec, N)
        g = TruncSeries._from_raw(R, g.raw, prec, 1)
        residual = fN.truncate(prec).compose(g) - x.truncate(prec)
        slope = df.truncate(prec).compose(g)
        slope = TruncSeries._from_raw(R, slope.raw, prec, 1)
        g = g - residual * slope.inverse()
    return TruncSeries._from_raw(R, g.raw, N, 1)
