import unittest

import numpy as np

from k3arith.clifford import (
    CliffordAlgebra,
    EndOperator,
    cl_inverse,
    conjugation_matrix,
    filtration_compatibility_check,
    find_isotropic,
    gspin_check,
    gspin_membership,
    isotropic_filtration,
    projector_pi,
    structural_filtration_dimension,
    trace_pair,
)
from k3arith.exceptions import (
    DenseRankError,
    NoHyperbolicPairError,
    NotIsotropicError,
    PreconditionError,
)
from k3arith.lattice import QuadLattice, direct_sum, standard_lattice


def split_lattice(n: int) -> QuadLattice:
    """U plus a diagonal form of rank n - 2."""
    U = standard_lattice("U")
    if n == 2:
        return U
    diag = [[2 * (i + 1) * (-1) ** i if i == j else 0 for j in range(n - 2)] for i in range(n - 2)]
    return direct_sum(U, QuadLattice(diag))


def hyperbolic(k: int) -> QuadLattice:
    U = standard_lattice("U")
    return direct_sum(*[U] * k)


class TestAlgebra(unittest.TestCase):
    def test_relations(self):
        """
        v·v = q(v) and the algebra is associative.
        """
        rng = np.random.default_rng(0)
        for n in (2, 3, 4, 5):
            A = split_lattice(n)
            alg = CliffordAlgebra(A)
            self.assertEqual(alg.dim, 2**n)
            for _ in range(10):
                v = [int(x) for x in rng.integers(-3, 4, size=n)]
                x = alg.vector(v)
                self.assertEqual(x * x, alg.element({0: A.quadratic(v)}))
            for _ in range(5):
                a, b, c = (alg.random_element(rng) for _ in range(3))
                self.assertEqual((a * b) * c, a * (b * c))

    def test_inverse(self):
        """
        Products of anisotropic vectors are invertible, products of
        isotropic ones are not.
        """
        alg = CliffordAlgebra(hyperbolic(2))
        g = alg.vector([1, 1, 0, 0]) * alg.vector([0, 0, 1, 1])
        ginv = cl_inverse(g)
        self.assertIsNotNone(ginv)
        self.assertEqual(g * ginv, alg.one())
        self.assertIsNone(cl_inverse(alg.vector([1, 0, 0, 0]) * alg.vector([0, 0, 1, 0])))

    def test_reversal(self):
        """
        Reversal is an anti-involution and its operator acts on
        coordinates the same way.
        """
        rng = np.random.default_rng(5)
        alg = CliffordAlgebra(hyperbolic(2))
        R = alg.reversal_operator().to_fractions()
        for _ in range(5):
            a, b = alg.random_element(rng), alg.random_element(rng)
            self.assertEqual((a * b).reversal(), b.reversal() * a.reversal())
            self.assertEqual(a.reversal().reversal(), a)
            self.assertEqual(R.dot(alg.coordinates(a)).tolist(), alg.coordinates(a.reversal()).tolist())

    def test_right_multiplication(self):
        """
        Right multiplications commute with left multiplications.
        """
        rng = np.random.default_rng(6)
        alg = CliffordAlgebra(split_lattice(3))
        a, b = alg.random_element(rng), alg.random_element(rng)
        Ra, Lb = alg.rmul_operator(a), alg.lmul_element_operator(b)
        self.assertEqual(Ra.to_fractions().dot(alg.coordinates(b)).tolist(), alg.coordinates(b * a).tolist())
        self.assertEqual(Ra @ Lb, Lb @ Ra)

    def test_dense_limit(self):
        """
        Dense operators are refused above the rank limit.
        """
        alg = CliffordAlgebra(hyperbolic(7))
        with self.assertRaises(DenseRankError):
            alg.lmul_operator([1] + [0] * 13)


class TestTraceIsometry(unittest.TestCase):
    def test_trace_pairing(self):
        """
        The normalized trace pairing of i(v) and i(w) equals (v, w) for
        random pairs at every rank up to 8.
        """
        rng = np.random.default_rng(1)
        for n in range(2, 9):
            A = split_lattice(n)
            alg = CliffordAlgebra(A)
            for _ in range(100):
                v = [int(x) for x in rng.integers(-5, 6, size=n)]
                w = [int(x) for x in rng.integers(-5, 6, size=n)]
                lhs = trace_pair(alg.lmul_operator(v), alg.lmul_operator(w))
                self.assertEqual(lhs, A.inner(v, w))

    def test_identity(self):
        """
        [Id, Id] = 2 for the normalization by 2^-(n-1).
        """
        self.assertEqual(trace_pair(EndOperator.identity(8), EndOperator.identity(8)), 2)


class TestProjector(unittest.TestCase):
    def test_properties(self):
        """
        π is idempotent with image i(M), its kernel is orthogonal to
        i(M), it fixes i(v) and both formulas agree, at ranks up to 6.
        """
        rng = np.random.default_rng(2)
        for n in range(2, 7):
            alg = CliffordAlgebra(split_lattice(n))
            pi = projector_pi(alg)
            N = alg.dim
            ops = [alg.lmul_operator([int(i == k) for i in range(n)]) for k in range(n)]
            for _ in range(5):
                g = EndOperator(rng.integers(-3, 4, size=(N, N)).astype(np.int64))
                pg = pi(g)
                self.assertEqual(pi(pg), pg)
                self.assertEqual(pg, alg.lmul_operator(pi.coefficients(g)))
                for op in ops:
                    self.assertEqual(trace_pair(g - pg, op), 0)
                self.assertEqual(pi.hyperbolic(g), pg)
                v = [int(x) for x in rng.integers(-3, 4, size=n)]
                iv = alg.lmul_operator(v)
                self.assertEqual(pi(iv), iv)

    def test_kills_identity(self):
        """
        The identity is orthogonal to i(M).
        """
        alg = CliffordAlgebra(hyperbolic(2))
        self.assertTrue(projector_pi(alg)(EndOperator.identity(alg.dim)).is_zero())

    def test_integrality(self):
        """
        p^k π is integral with k read off 2^-(n-1) G^-1.
        """
        alg = CliffordAlgebra(hyperbolic(2))
        pi = projector_pi(alg)
        self.assertEqual(pi.integrality_exponent(3), 0)
        self.assertEqual(pi.integrality_exponent(2), 3)
        self.assertEqual(pi.scaled(2).factor, 8)

    def test_isotropic_off_planes(self):
        """
        x^2 + y^2 - 2z^2 and x^2 + y^2 + z^2 + w^2 - 7v^2 have no isotropic
        vector in a coordinate plane, yet one is found.
        """
        for d in ([2, 2, -4], [2, 2, 2, 2, -14]):
            G = np.diag(d)
            e = find_isotropic(G)
            self.assertTrue(any(e))
            self.assertEqual(sum(c * x * x for c, x in zip(d, e)), 0)
        with self.assertRaises(NoHyperbolicPairError):
            find_isotropic(np.diag([2, 2, 2, -14]))


class TestFiltration(unittest.TestCase):
    def test_image_dimension(self):
        """
        i(e)(Cl) has dimension 2^(n-1) for an isotropic e.
        """
        for n in (2, 4, 6, 8):
            alg = CliffordAlgebra(split_lattice(n))
            e = [1] + [0] * (n - 1)
            _, FilH = isotropic_filtration(alg, e)
            self.assertEqual(FilH.dimension(0), 2 ** (n - 1))

    def test_levels(self):
        """
        Fil is decreasing, e lies in e^⊥ and e·x lies in Fil^0 of the
        algebra.
        """
        rng = np.random.default_rng(4)
        alg = CliffordAlgebra(hyperbolic(2))
        e = [1, 0, 0, 0]
        FilM, FilH = isotropic_filtration(alg, e)
        for a, b in zip(FilM.degrees, FilM.degrees[1:]):
            self.assertTrue(FilM.contains(a, FilM[b]))
        self.assertTrue(FilM.contains(0, [e]))
        self.assertFalse(FilM.contains(0, [[0, 1, 0, 0]]))
        x = alg.random_element(rng)
        self.assertTrue(FilH.contains(0, [alg.coordinates(alg.vector(e) * x)]))
        self.assertFalse(FilH.contains(0, [alg.coordinates(alg.one())]))

    def test_structural_dimension(self):
        """
        On the K3 lattice with e in a U summand the image of i(e) is
        spanned by the 2^21 monomials containing e, and on small lattices
        the count agrees with the dense filtration.
        """
        K3 = standard_lattice("K3")
        e = [int(i == 16) for i in range(22)]
        self.assertEqual(structural_filtration_dimension(K3, e), 2**21)
        for k in (2, 3):
            A = hyperbolic(k)
            e = [1, 0, 1, 0] + [0] * (A.rank - 4)
            _, FilH = isotropic_filtration(CliffordAlgebra(A), e)
            dim = structural_filtration_dimension(A, e)
            self.assertEqual(dim, 2 ** (A.rank - 1))
            self.assertEqual(dim, FilH.dimension(0))

    def test_structural_preconditions(self):
        """
        Zero, anisotropic and mis-sized vectors are refused with
        precondition errors.
        """
        U = standard_lattice("U")
        for e in ([0, 0], [1, 1], [1, 0, 0]):
            with self.assertRaises(PreconditionError):
                structural_filtration_dimension(U, e)
        with self.assertRaises(NotIsotropicError):
            structural_filtration_dimension(U, [1, 1])

    def test_compatibility(self):
        """
        All four clauses hold at ranks 4 and 6, also for an isotropic
        vector off the coordinate axes.
        """
        for k in (2, 3):
            alg = CliffordAlgebra(hyperbolic(k))
            n = 2 * k
            for e in ([1] + [0] * (n - 1), [1, 1, 1, -1] + [0] * (n - 4)):
                report = filtration_compatibility_check(alg, e)
                self.assertTrue(report["passed"], report)
                for c in "abcd":
                    self.assertTrue(report["clauses"][c]["passed"])

    def test_not_isotropic(self):
        """
        Filtrations need an isotropic vector.
        """
        alg = CliffordAlgebra(hyperbolic(2))
        with self.assertRaises(NotIsotropicError):
            isotropic_filtration(alg, [1, 1, 0, 0])


class TestGSpin(unittest.TestCase):
    def test_members(self):
        """
        Scalars and products of two anisotropic vectors lie in GSpin.
        """
        alg = CliffordAlgebra(hyperbolic(2))
        self.assertTrue(gspin_membership(alg, alg.one()))
        g = alg.vector([1, 1, 0, 0]) * alg.vector([0, 0, 1, 2])
        report = gspin_check(alg, g)
        self.assertTrue(report["member"])
        self.assertEqual(len(report["matrix"]), 4)

    def test_rejections(self):
        """
        Odd elements and non-invertible even elements are rejected.
        """
        alg = CliffordAlgebra(hyperbolic(2))
        for x in alg.gens():
            self.assertFalse(gspin_membership(alg, x))
        self.assertEqual(gspin_check(alg, alg.gens()[0])["reason"], "not even")
        g = alg.vector([1, 0, 0, 0]) * alg.vector([0, 0, 1, 0])
        self.assertEqual(gspin_check(alg, g)["reason"], "not invertible")
        with self.assertRaises(PreconditionError):
            conjugation_matrix(g)


if __name__ == "__main__":
    unittest.main()
