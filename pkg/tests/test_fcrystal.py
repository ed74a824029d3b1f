import math
import unittest
from fractions import Fraction

import numpy as np
from sympy import Matrix

from k3arith.exceptions import KatzConditionError, PreconditionError
from k3arith.fcrystal import (
    K3_HODGE_POLYGON,
    FCrystal,
    Polygon,
    check_k3_crystal,
    hodge_polygon,
    k3_model_crystal,
    k3_newton_polygon,
    katz_check,
    naive_k3_crystal,
    newton_polygon,
    random_unimodular,
    slope_decompose,
    tate_twist,
)
from k3arith.padic import vp_int
from k3arith.utils.padic import charpoly


def cyclic(h: int, p: int, corner: int) -> list:
    """F(e_i) = p e_(i+1) and F(e_h) = corner e_1."""
    M = [[0] * h for _ in range(h)]
    for i in range(h - 1):
        M[i + 1][i] = p
    M[0][h - 1] = corner
    return M


def blocks(*matrices) -> list:
    n = sum(len(B) for B in matrices)
    M = [[0] * n for _ in range(n)]
    k = 0
    for B in matrices:
        for i, row in enumerate(B):
            for j, x in enumerate(row):
                M[k + i][k + j] = x
        k += len(B)
    return M


class TestPolygons(unittest.TestCase):
    def test_newton(self):
        """
        Newton slopes of diagonal and cyclic Frobenius matrices.
        """
        C = FCrystal([[1, 0, 0], [0, 5, 0], [0, 0, 25]], p=5)
        self.assertEqual(newton_polygon(C), {0: 1, 1: 1, 2: 1})
        C = FCrystal(cyclic(3, 7, 1), p=7)
        self.assertEqual(newton_polygon(C), {Fraction(2, 3): 3})

    def test_hodge(self):
        """
        Hodge slopes are the valuations of the elementary divisors.
        """
        C = FCrystal([[0, 3], [1, 0]], p=3)
        self.assertEqual(hodge_polygon(C), {0: 1, 1: 1})
        C = FCrystal(cyclic(3, 7, 49), p=7)
        self.assertEqual(hodge_polygon(C), {1: 2, 2: 1})

    def test_vertices(self):
        """
        Vertices accumulate the slopes in increasing order.
        """
        P = Polygon({Fraction(1, 2): 2, 1: 1})
        self.assertEqual(P.vertices, [(0, 0), (2, 1), (3, 2)])
        self.assertEqual(Polygon.from_dict(P.to_dict()), P)

    def test_comparison(self):
        """
        The K3 Newton polygon of height 2 lies above the Hodge polygon
        and not the other way round.
        """
        newton, hodge = k3_newton_polygon(2), K3_HODGE_POLYGON
        self.assertEqual(hodge.breakpoints, [1, 21])
        self.assertEqual(newton.breakpoints, [2, 20])
        self.assertTrue(newton.lies_above(hodge))
        self.assertFalse(hodge.lies_above(newton))

    def test_tate_twist(self):
        """
        A twist by i lowers all slopes by i.
        """
        C = FCrystal([[3, 0], [0, 9]], p=3)
        T = tate_twist(C, 1)
        self.assertEqual(T.newton_polygon(), {0: 1, 1: 1})
        self.assertEqual(T.to_crystal().newton_polygon(), {0: 1, 1: 1})
        with self.assertRaises(PreconditionError):
            tate_twist(FCrystal([[1, 0], [0, 3]], p=3), 1).to_crystal()

    def test_roundtrip(self):
        """
        Crystals are rebuilt from their dictionaries.
        """
        C = FCrystal([[1, 2], [3, 4]], p=5, a=2, prec=6)
        self.assertEqual(FCrystal.from_dict(C.to_dict()), C)


class TestK3Crystals(unittest.TestCase):
    def test_slope_table(self):
        """
        The model crystal of height h has the K3 Newton polygon
        {1 - 1/h: h, 1: 22 - 2h, 1 + 1/h: h} and Hodge polygon
        {0: 1, 1: 20, 2: 1} for every h in 1..10 and p in {2, 3, 5}.
        """
        for h in range(1, 11):
            expected = {1 - Fraction(1, h): h, 1: 22 - 2 * h, 1 + Fraction(1, h): h}
            for p in (2, 3, 5):
                C = k3_model_crystal(h, p, 12)
                self.assertEqual(C.newton_polygon().as_dict(), Polygon(expected).as_dict())
                self.assertEqual(C.hodge_polygon(), {0: 1, 1: 20, 2: 1})
                report = check_k3_crystal(C)
                self.assertEqual(report["verdict"], "height")
                self.assertEqual(report["height"], h)

    def test_supersingular(self):
        """
        Infinite height gives all slopes 1, with either Hodge polygon.
        """
        for compatible in (False, True):
            C = k3_model_crystal(math.inf, 3, hodge_compatible=compatible)
            self.assertEqual(C.newton_polygon(), k3_newton_polygon("inf"))
            self.assertEqual(check_k3_crystal(C)["verdict"], "supersingular")
        C = k3_model_crystal(None, 3, hodge_compatible=True)
        self.assertEqual(C.hodge_polygon(), K3_HODGE_POLYGON)

    def test_naive_rejected(self):
        """
        Companion blocks give the right Newton polygon but the wrong
        Hodge polygon, and the recognizer says so.
        """
        for h in (2, 3):
            C = naive_k3_crystal(h, 2)
            self.assertEqual(C.newton_polygon(), k3_newton_polygon(h))
            report = check_k3_crystal(C)
            self.assertEqual(report["verdict"], "not-K3-shaped")
            self.assertIn("Hodge", report["reason"])

    def test_bad_height(self):
        """
        Heights outside 1..10 and composite primes are refused.
        """
        with self.assertRaises(PreconditionError):
            k3_model_crystal(11, 2)
        with self.assertRaises(PreconditionError):
            k3_model_crystal(2, 4)
        with self.assertRaises(PreconditionError):
            check_k3_crystal(FCrystal([[1]], p=2))


class TestKatz(unittest.TestCase):
    def test_random_crystals(self):
        """
        Newton lies above Hodge and both end at the valuation of the
        determinant, for random integral 6 x 6 crystals.
        """
        rng = np.random.default_rng(7)
        m = 12
        for p in (3, 5, 7):
            for _ in range(200):
                F = [[int(x) for x in row] for row in rng.integers(0, p**m, size=(6, 6))]
                det = int(Matrix(F).det())
                if det % p**m == 0:
                    continue
                report = katz_check(FCrystal(F, p, prec=m))
                self.assertTrue(report["passed"], F)
                self.assertTrue(report["endpoints_match"])
                self.assertEqual(hodge_polygon(FCrystal(F, p, prec=m)).total, vp_int(det, p))

    def test_scaled(self):
        """
        Multiplying the Frobenius by p shifts both polygons by 1 and
        they still satisfy the inequality.
        """
        F = [[0, 1, 0], [5, 0, 0], [0, 0, 25]]
        C = FCrystal(F, p=5)
        pC = FCrystal([[5 * x for x in row] for row in F], p=5)
        self.assertEqual(pC.newton_polygon(), C.newton_polygon().shift(-1))
        self.assertTrue(katz_check(pC)["passed"])


class TestDecomposition(unittest.TestCase):
    def test_hodge_newton(self):
        """
        At the breakpoint s = 1 of B1 + p·Id2 + B3, conjugated by random
        unimodular matrices, the sub-crystal has rank h and slopes
        (h-1)/h, and the slopes split exactly between sub and quotient.
        """
        p = 2
        rng = np.random.default_rng(11)
        for h in (2, 3, 5):
            F = blocks(cyclic(h, p, 1), [[p, 0], [0, p]], cyclic(h, p, p * p))
            C = FCrystal(F, p, prec=6 * h)
            newton = C.newton_polygon()
            for _ in range(20):
                g = random_unimodular(C.rank, rng, C.ring)
                D = slope_decompose(C.base_change(g), 1)
                self.assertEqual(D.sub.rank, h)
                self.assertEqual(D.sub.newton_polygon(), {Fraction(h - 1, h): h})
                self.assertEqual(D.sub.newton_polygon() | D.quotient.newton_polygon(), newton)

    def test_k3_model(self):
        """
        The K3 model crystals of height 2, 3 and 5 at the default
        precision, conjugated by random unimodular matrices, split at
        s = 1 into a sub-crystal of rank h and slope (h-1)/h with both
        blocks at the precision of the crystal.
        """
        rng = np.random.default_rng(12)
        for h in (2, 3, 5):
            C = k3_model_crystal(h, 2)
            newton = C.newton_polygon()
            for _ in range(20):
                g = random_unimodular(C.rank, rng, C.ring)
                D = slope_decompose(C.base_change(g), 1)
                self.assertEqual(D.sub.rank, h)
                self.assertEqual(D.sub.prec, C.prec)
                self.assertEqual(D.quotient.prec, C.prec)
                self.assertEqual(D.sub.newton_polygon(), {Fraction(h - 1, h): h})
                self.assertEqual(D.sub.hodge_polygon(), {0: 1, 1: h - 1})
                self.assertEqual(D.sub.newton_polygon() | D.quotient.newton_polygon(), newton)

    def test_block_diagonal(self):
        """
        On a block diagonal crystal the adapted basis keeps the first
        block invariant and the sub-crystal has its characteristic
        polynomial modulo p^m.
        """
        for h in (2, 3):
            C = k3_model_crystal(h, 3)
            R = C.ring
            D = slope_decompose(C, 1)
            self.assertEqual(D.sub.prec, C.prec)
            for row in D.basis[h:]:
                self.assertFalse(any(row[:h]))
            first = [row[:h] for row in C.raw[:h]]
            rest = [row[h:] for row in C.raw[h:]]
            self.assertEqual(charpoly(R, D.sub.raw), charpoly(R, first))
            self.assertEqual(charpoly(R, D.quotient.raw), charpoly(R, rest))

    def test_katz_condition(self):
        """
        A breakpoint off the Hodge polygon is refused.
        """
        C = FCrystal(blocks([[0, 1], [27, 0]], [[3]]), p=3)
        with self.assertRaises(KatzConditionError):
            slope_decompose(C, Fraction(5, 4))

    def test_no_split(self):
        """
        A slope below or above all slopes does not split the crystal.
        """
        C = FCrystal(blocks([[0, 3], [1, 0]], [[3]]), p=3)
        with self.assertRaises(PreconditionError):
            slope_decompose(C, 0)
        with self.assertRaises(PreconditionError):
            slope_decompose(C, 5)


if __name__ == "__main__":
    unittest.main()
