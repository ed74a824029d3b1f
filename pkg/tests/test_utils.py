import unittest
from fractions import Fraction

import numpy as np

from k3arith.lattice import E8_GRAM
from k3arith.padic import padic_ring
from k3arith.utils.clifford import lmul_matrix, parity_signs, popcount
from k3arith.utils.linalg import (
    congruence_diagonalize,
    elementary_divisors,
    hermite_rows,
    integer_det,
    integer_kernel,
    rational_inverse,
    smith_form,
)
from k3arith.utils.padic import charpoly, local_smith, mat_identity, mat_inverse, mat_mul
from k3arith.utils.polygon import hull_ordinate, lower_hull


class TestLinalg(unittest.TestCase):
    def test_det(self):
        """
        E8 is unimodular.
        """
        self.assertEqual(integer_det(E8_GRAM), 1)
        self.assertEqual(integer_det([[2, 1], [1, 2]]), 3)

    def test_kernel(self):
        """
        The kernel is saturated and annihilated by the matrix.
        """
        M = np.array([[2, 4, 6], [1, 2, 3]], dtype=object)
        K = integer_kernel(M)
        self.assertEqual(len(K), 2)
        self.assertFalse((M.dot(K.T) != 0).any())
        self.assertEqual(hermite_rows(K).tolist(), K.tolist())

    def test_hermite_rows(self):
        """
        The Hermite basis only depends on the row lattice.
        """
        H = hermite_rows([[2, 4], [6, 8]])
        self.assertEqual(H.tolist(), [[2, 0], [0, 4]])
        self.assertEqual(hermite_rows([[6, 8], [0, 0], [2, 4]]).tolist(), H.tolist())
        self.assertEqual(len(hermite_rows([[0, 0]])), 0)

    def test_smith_rank_deficient(self):
        """
        A rank one 2 x 3 matrix has one elementary divisor and U·M·V = D.
        """
        M = np.array([[2, 4, 6], [1, 2, 3]], dtype=object)
        D, U, V = smith_form(M)
        self.assertEqual(U.dot(M).dot(V).tolist(), D.tolist())
        self.assertEqual([D[0, 0], D[1, 1]], [1, 0])
        self.assertEqual(elementary_divisors(M), [1])
        self.assertEqual(abs(integer_det(U)), 1)
        self.assertEqual(abs(integer_det(V)), 1)

    def test_congruence(self):
        """
        T·G·T^t is the returned diagonal.
        """
        G = [[0, 1, 0], [1, 0, 2], [0, 2, 2]]
        d, T = congruence_diagonalize(G)
        D = T.dot(np.array(G, dtype=object)).dot(T.T)
        self.assertEqual(D.tolist(), np.diag(np.array(d, dtype=object)).tolist())

    def test_rational_inverse(self):
        """
        The inverse of the Gram matrix of <2> + <3>.
        """
        inv = rational_inverse([[2, 0], [0, 3]])
        self.assertEqual(inv.tolist(), [[Fraction(1, 2), 0], [0, Fraction(1, 3)]])


class TestCliffordKernels(unittest.TestCase):
    def test_square(self):
        """
        i(v)^2 = q(v)·Id in the monomial basis of E8.
        """
        G = np.array(E8_GRAM, dtype=np.int64)
        rng = np.random.default_rng(0)
        for _ in range(5):
            c = rng.integers(-2, 3, size=8).astype(np.int64)
            L = lmul_matrix(G, c)
            q = int(c.dot(G).dot(c)) // 2
            self.assertTrue(np.array_equal(L.dot(L), q * np.eye(256, dtype=np.int64)))

    def test_signs(self):
        """
        Parity signs follow the number of generators of a monomial.
        """
        signs = parity_signs(3)
        for S in range(8):
            self.assertEqual(signs[S], (-1) ** popcount(S))


class TestPadicMatrices(unittest.TestCase):
    def test_charpoly(self):
        """
        det(t - A) of a companion matrix recovers its polynomial.
        """
        R = padic_ring(5, 6)
        A = [[0, 0, R.convert(-7)], [1, 0, R.convert(3)], [0, 1, R.convert(2)]]
        self.assertEqual(charpoly(R, A), [1, R.convert(-2), R.convert(-3), R.convert(7)])

    def test_inverse(self):
        """
        A·A^-1 = Id for a unimodular matrix.
        """
        R = padic_ring(3, 5)
        A = [[1, 3], [2, 7]]
        self.assertEqual(mat_mul(R, A, mat_inverse(R, A)), mat_identity(R, 2))
        with self.assertRaises(ZeroDivisionError):
            mat_inverse(R, [[3, 0], [0, 1]])

    def test_local_smith(self):
        """
        The Smith diagonal of diag(9, 1, 3) is 1, 3, 9.
        """
        R = padic_ring(3, 5)
        diag, _, _ = local_smith(R, [[9, 0, 0], [0, 1, 0], [0, 0, 3]])
        self.assertEqual([R.valuation(x) for x in diag], [0, 1, 2])


class TestHull(unittest.TestCase):
    def test_lower_hull(self):
        """
        Points above the hull are dropped.
        """
        hull = lower_hull([(0, 0), (1, 3), (2, 1), (3, 3), (4, 3)])
        self.assertEqual(hull, [(0, 0), (2, 1), (4, 3)])
        self.assertEqual(hull_ordinate(hull, 3), 2)


if __name__ == "__main__":
    unittest.main()
