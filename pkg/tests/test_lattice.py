import unittest

import numpy as np

from k3arith.exceptions import DegenerateFormError, PreconditionError
from k3arith.lattice import (
    QuadLattice,
    SublatticeEmbedding,
    direct_sum,
    discriminant,
    discriminant_group,
    elementary_divisors,
    embed_into_selfdual,
    is_self_dual_at,
    orthogonal_complement,
    signature,
    smith_form,
    standard_lattice,
)


class TestStandardLattices(unittest.TestCase):
    def test_unimodular(self):
        """
        E8, U and the K3 lattice are even and unimodular with the
        expected signatures.
        """
        E8 = standard_lattice("E8")
        U = standard_lattice("U")
        K3 = standard_lattice("K3")
        self.assertEqual(discriminant(E8), 1)
        self.assertEqual(signature(E8), (8, 0))
        self.assertEqual(discriminant(U), -1)
        self.assertEqual(signature(U), (1, 1))
        self.assertEqual(K3.rank, 22)
        self.assertEqual(signature(K3), (19, 3))
        self.assertEqual(abs(discriminant(K3)), 1)
        self.assertTrue(all(L.is_even for L in (E8, U, K3)))

    def test_polarized(self):
        """
        L = E8 + E8 + U + U + <2d> has discriminant group Z/2d.
        """
        for d in (1, 2, 7):
            L = standard_lattice("L", d=d)
            self.assertEqual(L.rank, 21)
            self.assertEqual(discriminant(L), 2 * d)
            self.assertEqual(discriminant_group(L), [2 * d])
            self.assertEqual(signature(L), (19, 2))

    def test_bad_parameters(self):
        """
        Unknown names, non-positive d and composite p are rejected.
        """
        with self.assertRaises(PreconditionError):
            standard_lattice("A2")
        with self.assertRaises(PreconditionError):
            standard_lattice("L", d=0)
        with self.assertRaises(PreconditionError):
            standard_lattice("Ltilde", d=1, p=4)

    def test_asymmetric(self):
        """
        Gram matrices must be symmetric.
        """
        with self.assertRaises(PreconditionError):
            QuadLattice([[2, 1], [0, 2]])

    def test_degenerate(self):
        """
        The signature of a degenerate form is undefined.
        """
        with self.assertRaises(DegenerateFormError):
            signature(QuadLattice([[2, 2], [2, 2]]))

    def test_dual_basis(self):
        """
        The dual basis pairs with the basis to the identity.
        """
        A = standard_lattice("Lprime", d=2, p=3)
        dual = A.dual_basis()
        self.assertEqual(dual.dot(A.gram).tolist(), [[1, 0], [0, 1]])
        self.assertEqual(standard_lattice("U").dual_basis().tolist(), [[0, 1], [1, 0]])
        with self.assertRaises(DegenerateFormError):
            QuadLattice([[2, 2], [2, 2]]).dual_basis()

    def test_dict(self):
        """
        Lattices are rebuilt from their dictionaries.
        """
        A = standard_lattice("Lprime", d=3, p=5)
        self.assertEqual(QuadLattice.from_dict(A.to_dict()), A)


class TestEmbedding(unittest.TestCase):
    def test_embed_into_selfdual(self):
        """
        For every d in 1..25 and p in {2, 3, 5, 7, 11} the lattice L
        embeds primitively into an even lattice of signature (20, 2)
        with discriminant 4dp - 1, prime to p.
        """
        for d in range(1, 26):
            for p in (2, 3, 5, 7, 11):
                L, Lt, E = embed_into_selfdual(d, p)
                det = discriminant(Lt)
                self.assertEqual(det, 4 * d * p - 1)
                self.assertTrue(is_self_dual_at(Lt, p))
                self.assertTrue(Lt.is_even)
                self.assertEqual(signature(Lt), (20, 2))
                self.assertTrue(E.is_primitive())
                self.assertEqual(E.elementary_divisors(), [1] * L.rank)

    def test_complement(self):
        """
        The orthogonal complement of L in Ltilde has rank one and is
        orthogonal to every vector of L.
        """
        L, Lt, E = embed_into_selfdual(3, 5)
        C = orthogonal_complement(E)
        self.assertEqual(C.sub.rank, 1)
        self.assertTrue(C.is_primitive())
        M, K = E.matrix, C.matrix
        self.assertFalse((M.T.dot(Lt.gram).dot(K) != 0).any())
        # spanned by (1, -2d) in Lprime
        self.assertEqual(discriminant(C.sub), 2 * 3 * (4 * 3 * 5 - 1))

    def test_not_primitive(self):
        """
        The span of 2e in U is not a direct summand.
        """
        U = standard_lattice("U")
        E = SublatticeEmbedding.from_vectors(direct_sum(U, U), [[2, 0, 0, 0], [0, 0, 1, 0]])
        self.assertFalse(E.is_primitive())
        self.assertEqual(sorted(E.elementary_divisors()), [1, 2])

    def test_roundtrip(self):
        """
        Embeddings survive serialization.
        """
        E = embed_into_selfdual(2, 3)[2]
        F = SublatticeEmbedding.from_dict(E.to_dict())
        self.assertEqual(F.ambient, E.ambient)
        self.assertEqual(F.matrix.tolist(), E.matrix.tolist())


class TestSmith(unittest.TestCase):
    def test_elementary_divisors(self):
        """
        Elementary divisors divide each other.
        """
        ed = elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        self.assertEqual(ed, [2, 6, 12])

    def test_smith_form(self):
        """
        U·A·V is diagonal with the elementary divisors on the diagonal.
        """
        A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
        D, U, V = smith_form(A)
        self.assertEqual(U.dot(A).dot(V).tolist(), D.tolist())
        self.assertEqual([D[i, i] for i in range(3)], [2, 6, 12])


if __name__ == "__main__":
    unittest.main()
