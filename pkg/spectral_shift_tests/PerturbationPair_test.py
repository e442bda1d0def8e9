from spectral_shift.PerturbationPair import PerturbationPair
from spectral_shift.HermitianOperator import HermitianOperator, imaginary_part
from spectral_shift.NevanlinnaLogarithm import check_nevanlinna
from spectral_shift.NumericalErrors import SingularWeyl, SpectrumHit
import unittest

import numpy


def rank_one_pair():
    return PerturbationPair(HermitianOperator([[0.0]]), [[1.0]], [[1.0]])


class InitTest(unittest.TestCase):

    def test_given_rank_one_then_b_set(self):
        pair = rank_one_pair()

        numpy.testing.assert_allclose([[1.0]], pair.b_op.entries)
        self.assertEqual((1, 1), (pair.n, pair.d))

    def test_given_plain_array_then_wrapped(self):
        pair = PerturbationPair(numpy.diag([1.0, 2.0]), [1.0, 0.0], [[2.0]])

        self.assertIsInstance(pair.a_op, HermitianOperator)
        numpy.testing.assert_allclose(numpy.diag([3.0, 2.0]), pair.b_op.entries.real)

    def test_given_rank_deficient_g_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair(numpy.eye(3), [[1, 2], [2, 4], [3, 6]], numpy.eye(2))

        self.assertIn("not injective", str(error.exception))

    def test_given_too_many_columns_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair(numpy.eye(1), [[1, 1]], numpy.eye(2))

        self.assertIn("not injective", str(error.exception))

    def test_given_singular_t_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair(numpy.eye(2), numpy.eye(2), numpy.diag([1.0, 0.0]))

        self.assertIn("not invertible", str(error.exception))

    def test_given_non_hermitian_t_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair(numpy.eye(2), numpy.eye(2), [[1, 1], [0, 1]])

        self.assertIn("T coupling", str(error.exception))
        self.assertIn("Hermitian", str(error.exception))

    def test_given_t_shape_mismatch_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair(numpy.eye(2), numpy.eye(2), [[1.0]])

        self.assertIn("T must be 2x2", str(error.exception))

    def test_given_checkpoint_in_spectrum_then_error(self):

        with self.assertRaises(ValueError) as error:
            PerturbationPair([[0.0]], [[1.0]], [[1.0]], sign_checkpoint=1.0)

        self.assertIn("spectrum of B", str(error.exception))

    def test_given_checkpoint_below_spectra_then_accepted(self):
        pair = PerturbationPair([[0.0]], [[1.0]], [[1.0]], sign_checkpoint=-1.0)

        self.assertEqual(-1.0, pair.sign_checkpoint)


class RandomPairTest(unittest.TestCase):

    def test_given_definite_then_sign_definite(self):
        pair = PerturbationPair.random(5, 2, numpy.random.default_rng(3))

        self.assertTrue(pair.is_sign_definite())
        self.assertEqual((5, 2), pair.g_map.shape)

    def test_given_indefinite_then_mixed_signs(self):
        pair = PerturbationPair.random(5, 2, numpy.random.default_rng(3), definite=False)

        self.assertFalse(pair.is_sign_definite())
        self.assertEqual(1, numpy.count_nonzero(pair.t_coupling.eigenvalues < 0))


class WeylFunctionTest(unittest.TestCase):

    def setUp(self):
        self.pair = rank_one_pair()

    def test_given_minus_one_then_two(self):
        numpy.testing.assert_allclose([[2.0]], self.pair.weyl_eval(-1.0).real)

    def test_given_i_then_one_plus_i(self):
        numpy.testing.assert_allclose([[1 + 1j]], self.pair.weyl_eval(1j))

    def test_given_two_then_half(self):
        numpy.testing.assert_allclose([[0.5]], self.pair.weyl_eval(2.0).real)

    def test_given_eigenvalue_of_a_then_spectrum_hit(self):

        with self.assertRaises(SpectrumHit):
            self.pair.weyl_eval(0.0)

    def test_given_eigenvalue_of_b_then_singular(self):

        with self.assertRaises(SingularWeyl) as error:
            self.pair.krein_residual(1.0)

        self.assertEqual(1.0, error.exception.point)

    def test_given_derivative_then_resolvent_power(self):
        numpy.testing.assert_allclose([[1/(0 - 1j)**2]], self.pair.weyl_derivative(1j, 1))
        numpy.testing.assert_allclose([[2/(0 - 1j)**3]], self.pair.weyl_derivative(1j, 2))

    def test_given_random_pair_then_derivative_matches_difference(self):
        pair = PerturbationPair.random(4, 2, numpy.random.default_rng(8))
        z, step = 0.3 + 0.7j, 1e-5

        difference = (pair.weyl_eval(z + step) - pair.weyl_eval(z - step))/(2*step)

        numpy.testing.assert_allclose(difference, pair.weyl_derivative(z, 1), atol=1e-8)

    def test_given_zero_order_then_error(self):

        with self.assertRaises(ValueError) as error:
            self.pair.weyl_derivative(1j, 0)

        self.assertIn("positive integer", str(error.exception))

    def test_evaluator_is_nevanlinna(self):
        pair = PerturbationPair.random(6, 3, numpy.random.default_rng(21))
        rng = numpy.random.default_rng(0)
        points = rng.uniform(-4, 4, 50) + 1j*rng.uniform(0.01, 2, 50)

        lowest, reflection = check_nevanlinna(pair.weyl_evaluator(), points)

        self.assertGreaterEqual(lowest, -1e-10)
        self.assertLess(reflection, 1e-10)

    def test_evaluator_defined_below_spectrum(self):
        evaluator = self.pair.weyl_evaluator()

        numpy.testing.assert_allclose([[2.0]], evaluator(-1.0).real)


class KreinFormulaTest(unittest.TestCase):

    def setUp(self):
        self.pair = PerturbationPair.random(6, 2, numpy.random.default_rng(13))

    def test_given_rank_one_then_machine_precision(self):
        pair = rank_one_pair()

        for z in (1j, -2.0, 0.5 + 0.1j, 3 - 1j):
            self.assertLess(pair.krein_residual(z), 1e-12)

    def test_given_random_pair_then_within_scaled_tolerance(self):
        for z in (1j, -1j, 0.5 + 0.01j, -10.0, 10.0):
            self.assertLessEqual(self.pair.krein_residual(z), self.pair.krein_tolerance(z))

    def test_given_eigenvalue_of_a_then_spectrum_hit(self):

        with self.assertRaises(SpectrumHit):
            self.pair.krein_residual(self.pair.a_op.eigenvalues[0])

    def test_two_point_identity(self):
        self.assertLess(self.pair.two_point_residual(0.3 + 1j, -0.5 + 2j), 1e-10)

    def test_imaginary_part_identity(self):
        self.assertLess(self.pair.imaginary_part_residual(0.3 + 0.5j), 1e-10)

    def test_imaginary_part_positive(self):
        value = imaginary_part(self.pair.weyl_eval(0.1 + 0.2j))

        self.assertGreaterEqual(numpy.min(numpy.linalg.eigvalsh(value)), 0.0)

    def test_gamma_shift_identity(self):
        self.assertLess(self.pair.gamma.shift_residual(1 + 1j, -2 + 0.5j), 1e-10)

    def test_gamma_eval_is_resolvent_times_g(self):
        expected = self.pair.a_op.resolvent(2j).dot(self.pair.g_map)

        numpy.testing.assert_allclose(expected, self.pair.gamma_eval(2j))

    def test_resolvent_trace_identity(self):
        left, right = self.pair.resolvent_trace_identity(0.2 + 1j)

        self.assertAlmostEqual(left, right, places=10)
