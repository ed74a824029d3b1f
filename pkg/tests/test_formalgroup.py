import unittest
from fractions import Fraction
from math import factorial

import numpy as np

from k3arith.exceptions import (
    NonIntegralError,
    ParentMismatchError,
    PrecisionError,
    PreconditionError,
    TruncationError,
)
from k3arith.formalgroup import (
    FglHom,
    FormalGroupLaw,
    LogExpansion,
    a_series,
    additive_law,
    fgl_from_log,
    height,
    honda_law,
    honda_log,
    lift_with_action,
    multiplicative_law,
    multiplicative_log,
    n_series,
    p_series,
    reduction_check,
    reduction_commutes,
)
from k3arith.padic import QQ, AtLeast, PadicInt, TruncSeries, coefficient_ring, padic_ring, series_reverse


class TestLogarithms(unittest.TestCase):
    def test_exp(self):
        """
        The exponential of log(1 + x) is e^x - 1.
        """
        E = LogExpansion(multiplicative_log(8))
        self.assertEqual(E.exp_coeffs[1:], [Fraction(1, factorial(n)) for n in range(1, 8)])

    def test_exp_is_reverse(self):
        """
        The triangular solve agrees with Newton reversion.
        """
        for log in (multiplicative_log(12), honda_log(2, 2, 17), honda_log(1, 3, 20)):
            self.assertEqual(LogExpansion(log).exp(), series_reverse(log))

    def test_honda_log(self):
        """
        Only the exponents p^(hi) appear.
        """
        self.assertEqual(honda_log(2, 2, 17).to_dict(), {"1": "1", "4": "1/2", "16": "1/4"})
        with self.assertRaises(PreconditionError):
            honda_log(0, 2, 10)

    def test_bad_log(self):
        """
        A logarithm starts with x.
        """
        with self.assertRaises(PreconditionError):
            LogExpansion(TruncSeries(QQ, {1: 2}, trunc=4))
        with self.assertRaises(PreconditionError):
            LogExpansion(TruncSeries(QQ, {0: 1, 1: 1}, trunc=4))


class TestLaws(unittest.TestCase):
    def test_multiplicative(self):
        """
        log(1 + x) gives x + y + xy and nothing else.
        """
        F = multiplicative_law(p=5, N=12, prec=6)
        self.assertEqual(F.series.to_dict(), {"0,1": 1, "1,0": 1, "1,1": 1})
        self.assertTrue(F.check_axioms()["passed"])

    def test_additive(self):
        """
        The additive law is x + y.
        """
        F = additive_law(p=3, N=10)
        self.assertEqual(F.series.to_dict(), {"0,1": 1, "1,0": 1})

    def test_honda_axioms(self):
        """
        Honda laws are integral and satisfy the axioms, also over Witt
        rings.
        """
        for h, p, N in ((1, 2, 9), (2, 2, 17), (2, 3, 28), (3, 2, 33)):
            F = honda_law(h, p=p, N=N, prec=6)
            report = F.check_axioms()
            self.assertTrue(report["passed"], report)
            self.assertTrue(report["associative"])
        W = coefficient_ring(2, 2, 6)
        F = honda_law(2, W, 17)
        self.assertEqual(F.ring, W)
        self.assertTrue(F.check_axioms()["passed"])

    def test_not_integral(self):
        """
        x + x^2/3 has the coefficient -2/3 at xy.
        """
        log = TruncSeries(QQ, {1: 1, 2: Fraction(1, 3)}, trunc=6)
        with self.assertRaises(NonIntegralError) as cm:
            fgl_from_log(log, p=3, prec=4)
        self.assertEqual(cm.exception.details["coefficient"], [1, 1])
        F = fgl_from_log(log, p=5, prec=4)
        self.assertTrue(F.check_axioms()["passed"])

    def test_rejected_series(self):
        """
        Series violating the axioms are refused.
        """
        R = padic_ring(3, 4)
        bad = TruncSeries(R, {"1,0": 1, "0,1": 1, "2,0": 1}, trunc=6, nvars=2)
        with self.assertRaises(PreconditionError):
            FormalGroupLaw(bad)
        self.assertFalse(FormalGroupLaw(bad, verify=False).check_axioms()["passed"])

    def test_rejected_above_degree_sixteen(self):
        """
        A corruption in degree 18 is found when the truncation is 20,
        and only a smaller degree asked for explicitly skips it.
        """
        R = padic_ring(3, 4)
        bad = TruncSeries(R, {"1,0": 1, "0,1": 1, "18,0": 1, "0,18": 1}, trunc=20, nvars=2)
        with self.assertRaises(PreconditionError) as cm:
            FormalGroupLaw(bad)
        report = cm.exception.details["report"]
        self.assertEqual(report["degree"], 19)
        self.assertEqual(report["witness"], {"axiom": "unit", "monomial": [18]})
        F = FormalGroupLaw(bad, degree=16)
        self.assertFalse(F.check_axioms()["passed"])
        self.assertTrue(F.check_axioms(16)["passed"])

    def test_associativity_top_degree(self):
        """
        x + y + x^9 y^9 is unital and commutative but not associative,
        which shows in degree 18 of a law truncated at 20.
        """
        R = padic_ring(3, 4)
        bad = TruncSeries(R, {"1,0": 1, "0,1": 1, "9,9": 1}, trunc=20, nvars=2)
        report = FormalGroupLaw(bad, verify=False).check_axioms()
        self.assertTrue(report["unit"])
        self.assertTrue(report["commutative"])
        self.assertFalse(report["associative"])
        self.assertEqual(sum(report["witness"]["monomial"]), 18)

    def test_roundtrip(self):
        """
        Laws are rebuilt from their dictionaries with their logarithm.
        """
        F = honda_law(2, coefficient_ring(2, 2, 4), 17)
        G = FormalGroupLaw.from_dict(F.to_dict())
        self.assertEqual(G, F)
        self.assertEqual(G.log, F.log)

    def test_with_precision(self):
        """
        Lowering the precision keeps the logarithm, reducing drops it.
        """
        F = honda_law(2, p=2, N=17, prec=6)
        self.assertEqual(F.with_precision(3).prec, 3)
        self.assertIsNotNone(F.with_precision(3).log)
        self.assertEqual(F.reduce().prec, 1)
        self.assertIsNone(F.reduce().log)
        with self.assertRaises(PreconditionError):
            F.with_precision(7)


class TestHeight(unittest.TestCase):
    def test_honda_heights(self):
        """
        The Honda law of height h has height h with N = p^(h+1) + 1.
        """
        cases = [(2, h) for h in range(1, 6)] + [(3, h) for h in range(1, 4)] + [(5, 1), (5, 2)]
        for p, h in cases:
            F = honda_law(h, p=p, N=p ** (h + 1) + 1, prec=4, verify=False)
            self.assertEqual(height(F), h, (p, h))

    def test_multiplicative(self):
        """
        [p](x) = (1 + x)^p - 1 and the height is 1.
        """
        for p in (2, 3, 5):
            F = multiplicative_law(p=p, N=2 * p + 1, prec=8)
            x = TruncSeries.gen(F.ring, F.trunc)
            self.assertEqual(p_series(F), (1 + x) ** p - 1)
            self.assertEqual(height(F), 1)

    def test_infinite(self):
        """
        The additive law only bounds the height from below.
        """
        self.assertEqual(height(additive_law(p=3, N=10)), AtLeast(3))
        self.assertEqual(height(additive_law(p=2, N=20)), AtLeast(5))

    def test_truncation(self):
        """
        N must exceed p.
        """
        with self.assertRaises(TruncationError):
            height(multiplicative_law(p=5, N=5))

    def test_n_series(self):
        """
        [n] agrees with the action of the integer n.
        """
        F = honda_law(2, p=2, N=17, prec=6)
        for n in (0, 1, 2, 5):
            self.assertEqual(n_series(F, n), a_series(F, n).series)
        with self.assertRaises(PreconditionError):
            n_series(F, -1)


class TestEndomorphisms(unittest.TestCase):
    def test_multiplicative_action(self):
        """
        [a](x) = (1 + x)^a - 1 and [a]∘[b] = [ab].
        """
        F = multiplicative_law(p=3, N=10, prec=6)
        x = TruncSeries.gen(F.ring, F.trunc)
        A, B = a_series(F, 2), a_series(F, 5)
        self.assertEqual(A.series, (1 + x) ** 2 - 1)
        self.assertEqual(A.compose(B), a_series(F, 10))
        self.assertTrue(A.is_homomorphism())
        self.assertEqual(a_series(F, Fraction(1, 2)).series.compose(A.series), x)

    def test_inexact_scalar(self):
        """
        An element known modulo p^m' loses the digits eaten by the
        denominators of the expansion.
        """
        F = multiplicative_law(p=5, N=6, prec=6)
        A = a_series(F, PadicInt(3, 5, 6))
        self.assertEqual(A.prec, 5)
        R = padic_ring(5, 5)
        x = TruncSeries.gen(R, 6)
        self.assertEqual(A.series, (1 + x) ** 3 - 1)
        self.assertEqual(a_series(F, 3).prec, 6)

    def test_precision_exhausted(self):
        """
        A scalar known modulo p cannot determine [a] modulo 2 up to x^16.
        """
        F = multiplicative_law(p=2, N=17, prec=6)
        with self.assertRaises(PrecisionError):
            a_series(F, PadicInt(3, 2, 1))

    def test_corrupted(self):
        """
        Perturbing the series of [2] breaks the reduction check.
        """
        F = multiplicative_law(padic_ring(3, 6), 8)
        good = a_series(F, 2)
        self.assertTrue(reduction_commutes(F, good))
        bad = FglHom(F, F, TruncSeries(F.ring, {1: 2, 2: 2}, trunc=F.trunc))
        report = reduction_check(F, bad)
        self.assertFalse(report["passed"])
        self.assertIsNotNone(report["witness"])
        self.assertFalse(bad.is_homomorphism())

    def test_parent_mismatch(self):
        """
        A homomorphism lives over the ring of its laws.
        """
        F = multiplicative_law(p=3, N=8, prec=6)
        G = multiplicative_law(p=3, N=8, prec=4)
        with self.assertRaises(ParentMismatchError):
            FglHom(F, G, a_series(F, 2).series)

    def test_roundtrip(self):
        """
        Homomorphisms are rebuilt from their dictionaries.
        """
        F = honda_law(2, coefficient_ring(2, 2, 6), 17)
        A = a_series(F, [1, 1])
        self.assertEqual(FglHom.from_dict(A.to_dict()), A)


class TestLiftWithAction(unittest.TestCase):
    def test_honda_height_two(self):
        """
        Over W(F_4) modulo 2^6 the height 2 law carries endomorphisms for
        ten random ring elements, additive and multiplicative in a, with
        reductions that are endomorphisms of the reduced law.
        """
        rng = np.random.default_rng(3)
        result = lift_with_action(2, 2, 6, 17, count=10, rng=rng)
        report = result.report
        self.assertTrue(report["passed"])
        self.assertEqual(len(result.actions), 10)
        self.assertEqual(result.law.ring.degree, 2)
        for entry in report["actions"]:
            self.assertTrue(entry["endomorphism"])
            self.assertTrue(entry["reduction"]["passed"])
        self.assertEqual(len(report["pairs"]), 9)
        for pair in report["pairs"]:
            self.assertTrue(pair["additive"])
            self.assertTrue(pair["multiplicative"])

    def test_explicit_elements(self):
        """
        Given elements are used as they are.
        """
        result = lift_with_action(2, 3, 4, 28, elements=[1, [0, 1], [2, 5]])
        self.assertTrue(result.report["passed"])
        self.assertEqual(result.actions[0].series, TruncSeries.gen(result.law.ring, 28))

    def test_too_many_coefficients(self):
        """
        Elements of W(F_(p^h)) have at most h coordinates.
        """
        with self.assertRaises(PreconditionError):
            lift_with_action(2, 2, 4, 9, elements=[[1, 0, 1]])


if __name__ == "__main__":
    unittest.main()
