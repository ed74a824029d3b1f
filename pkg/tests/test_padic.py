import unittest
from fractions import Fraction

import numpy as np

from k3arith.exceptions import ParentMismatchError, PreconditionError, NotReversibleError
from k3arith.padic import (
    QQ,
    AtLeast,
    PadicInt,
    PadicRing,
    TruncSeries,
    WittElem,
    WittRing,
    coefficient_ring,
    padic_ring,
    series_reverse,
    val_p,
)


class TestPadicInt(unittest.TestCase):
    def test_valuation(self):
        """
        Valuations of nonzero elements are exact, zero reports only
        the precision as a lower bound.
        """
        self.assertEqual(val_p(PadicInt(50, 5, 6)), 2)
        self.assertEqual(val_p(PadicInt(0, 5, 6)), AtLeast(6))
        self.assertEqual(val_p(PadicInt(5**6, 5, 6)), AtLeast(6))
        self.assertEqual(val_p(Fraction(9, 4), 3), 2)
        self.assertEqual(val_p(Fraction(9, 4), 2), -2)

    def test_inverse(self):
        """
        Units have inverses modulo p^m and fractions with a denominator
        prime to p are converted.
        """
        rng = np.random.default_rng(0)
        for _ in range(50):
            x = PadicInt(int(rng.integers(1, 7**8)), 7, 8)
            if not x.is_unit():
                continue
            self.assertEqual(x * x.inverse(), 1)
        self.assertEqual(PadicInt(Fraction(1, 3), 5, 4) * 3, 1)

    def test_mixed_precision(self):
        """
        Operations between elements of different precisions truncate to
        the smaller one.
        """
        x, y = PadicInt(3, 5, 4), PadicInt(1, 5, 2)
        self.assertEqual((x + y).prec, 2)
        self.assertEqual((x * y).prec, 2)
        with self.assertRaises(ParentMismatchError):
            PadicInt(1, 3, 2) + PadicInt(1, 5, 2)

    def test_unit_part(self):
        """
        x = p^v·u with u known to m - v digits.
        """
        x = PadicInt(2 * 25, 5, 6)
        u = x.unit_part()
        self.assertEqual(u.prec, 4)
        self.assertEqual(u.value, 2)

    def test_raw_ring(self):
        """
        The raw protocol of the p-adic ring.
        """
        R = padic_ring(3, 5)
        self.assertIsInstance(R, PadicRing)
        self.assertEqual(R.times_p(R.convert(2), 1), 6)
        self.assertEqual(R.divide_by_p(6, 1), 2)
        with self.assertRaises(ArithmeticError):
            R.divide_by_p(4, 1)
        self.assertEqual(R.reduce(100, 2), 100 % 9)
        self.assertEqual(R.with_precision(2).prec, 2)
        self.assertEqual(R.from_json(R.to_json(17)), 17)


class TestWitt(unittest.TestCase):
    def test_coefficient_ring(self):
        """
        Residue degree 1 gives the p-adic integers, larger degrees the
        Witt ring of the extension.
        """
        self.assertIsInstance(coefficient_ring(5, 1, 4), PadicRing)
        W = coefficient_ring(5, 2, 4)
        self.assertIsInstance(W, WittRing)
        self.assertEqual(W.degree, 2)

    def test_frobenius_order(self):
        """
        The Frobenius lift has order a and reduces to the p-th power.
        """
        rng = np.random.default_rng(1)
        for p, a in ((2, 2), (3, 2), (2, 3), (5, 3)):
            W = WittRing(p, a, 6)
            for _ in range(10):
                w = W.element(W.random(rng))
                self.assertEqual(w.frobenius(a), w)
                self.assertEqual(w.frobenius().residue(), (w**p).residue())

    def test_teichmuller(self):
        """
        Teichmüller representatives are fixed by the q-th power map.
        """
        for p, a in ((2, 2), (3, 2)):
            w = WittElem([1, 1], p, a, 6).teichmuller()
            self.assertEqual(w ** (p**a), w)
            self.assertEqual(w.frobenius(), w**p)

    def test_inverse(self):
        """
        Elements with a nonzero residue are invertible.
        """
        rng = np.random.default_rng(2)
        W = WittRing(3, 2, 6)
        for _ in range(20):
            w = W.element(W.random(rng))
            if w.is_unit():
                self.assertEqual(w * w.inverse(), 1)


class TestSeries(unittest.TestCase):
    def test_arithmetic(self):
        """
        Products truncate at the smaller bound and scalars act on the
        constant term.
        """
        x = TruncSeries.gen(QQ, 5)
        f = (1 + x) ** 3
        self.assertEqual(f.to_dict(), {"0": 1, "1": 3, "2": 3, "3": 1})
        self.assertEqual((x**6).is_zero(), True)
        self.assertEqual((f - 1).lowest_degree(), 1)

    def test_inverse(self):
        """
        The multiplicative inverse of 1 - x is the geometric series.
        """
        x = TruncSeries.gen(QQ, 6)
        g = (1 - x).inverse()
        self.assertEqual(g, TruncSeries(QQ, {i: 1 for i in range(6)}, trunc=6))

    def test_reverse(self):
        """
        The compositional inverse satisfies f(g(x)) = g(f(x)) = x.
        """
        x = TruncSeries.gen(QQ, 8)
        f = x + x**2 - 3 * x**5
        g = series_reverse(f)
        self.assertEqual(f.compose(g), x)
        self.assertEqual(g.compose(f), x)
        with self.assertRaises(NotReversibleError):
            series_reverse(x**2)

    def test_reverse_padic(self):
        """
        Reversion works over the p-adic integers as well.
        """
        R = padic_ring(5, 6)
        x = TruncSeries.gen(R, 10)
        f = x + 5 * x**3 + x**4
        self.assertEqual(series_reverse(f).compose(f), x)

    def test_substitute(self):
        """
        Substituting two series into a bivariate series.
        """
        R = padic_ring(3, 4)
        x = TruncSeries.gen(R, 6, 0, 2)
        y = TruncSeries.gen(R, 6, 1, 2)
        F = x + y + x * y
        self.assertEqual(F.swap(), F)
        t = TruncSeries.gen(R, 6)
        self.assertEqual(F.substitute(t, t), 2 * t + t**2)

    def test_to_dict(self):
        """
        Serialized series are read back unchanged.
        """
        W = WittRing(2, 2, 4)
        f = TruncSeries(W, {"1,0": [1, 1], "0,1": 1, "2,1": [0, 3]}, trunc=5, nvars=2)
        g = TruncSeries.from_dict(f.to_dict(), W, 5, 2)
        self.assertEqual(f, g)

    def test_mismatch(self):
        """
        Series over different rings do not combine.
        """
        f = TruncSeries.gen(padic_ring(3, 4), 4)
        g = TruncSeries.gen(padic_ring(5, 4), 4)
        with self.assertRaises(PreconditionError):
            f + g


if __name__ == "__main__":
    unittest.main()
