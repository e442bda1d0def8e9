from spectral_shift.ShootingSolver import PotentialSamples, ShootingSolver, bracket_roots
from spectral_shift.NumericalErrors import OdeSolveFailure, RootFindingFailure
import unittest

from mock import patch, MagicMock
import numpy


class PotentialSamplesTest(unittest.TestCase):

    def test_given_one_sample_then_error(self):

        with self.assertRaises(ValueError) as error:
            PotentialSamples([1.0], 0.0, 1.0)

        self.assertIn("at least 2 samples", str(error.exception))

    def test_given_nan_then_error(self):

        with self.assertRaises(ValueError) as error:
            PotentialSamples([1.0, numpy.nan], 0.0, 1.0)

        self.assertIn("finite", str(error.exception))

    def test_given_empty_mesh_then_error(self):

        with self.assertRaises(ValueError) as error:
            PotentialSamples([1.0, 1.0], 1.0, 1.0)

        self.assertIn("must be below stop", str(error.exception))

    def test_given_points_then_interpolated_and_zero_outside(self):
        potential = PotentialSamples([0.0, 2.0, 0.0], -1.0, 1.0)

        numpy.testing.assert_allclose([0.0, 1.0, 2.0, 1.0, 0.0, 0.0],
                                      potential([-2.0, -0.5, 0.0, 0.5, 1.0, 3.0]))

    def test_constant_and_zero(self):
        self.assertEqual(-5.0, PotentialSamples.constant(-5.0, 0.0, 1.0).minimum())
        self.assertTrue(PotentialSamples.zero(0.0, 1.0).is_zero())
        self.assertFalse(PotentialSamples.constant(1.0, 0.0, 1.0).is_zero())


class FundamentalMatrixTest(unittest.TestCase):

    def setUp(self):
        self.solver = ShootingSolver(PotentialSamples.zero(0.0, 1.0), 0.0, 1.0)

    def test_given_minus_one_then_hyperbolic(self):
        expected = numpy.array([[numpy.cosh(1), numpy.sinh(1)], [numpy.sinh(1), numpy.cosh(1)]])

        numpy.testing.assert_allclose(expected, self.solver.fundamental_matrix(-1.0), atol=1e-8)

    def test_given_pi_squared_then_trigonometric(self):
        expected = numpy.array([[-1.0, 0.0], [0.0, -1.0]])

        numpy.testing.assert_allclose(expected, self.solver.fundamental_matrix(numpy.pi**2),
                                      atol=1e-8)

    def test_given_complex_energy_then_wronskian_one(self):
        (c, s), (c_prime, s_prime) = self.solver.fundamental_matrix(2.0 + 0.5j)

        self.assertAlmostEqual(1.0, c*s_prime - s*c_prime, places=8)

    def test_given_constant_potential_then_shifted_energy(self):
        shifted = ShootingSolver(PotentialSamples.constant(3.0, 0.0, 1.0), 0.0, 1.0)

        numpy.testing.assert_allclose(self.solver.fundamental_matrix(-1.0),
                                      shifted.fundamental_matrix(2.0), atol=1e-8)

    @patch('spectral_shift.ShootingSolver.integrate.solve_ivp')
    def test_given_solver_failure_then_error(self, solve_mock):
        solve_mock.return_value = MagicMock(success=False, message="step size too small")

        with self.assertRaises(OdeSolveFailure) as error:
            self.solver.fundamental_matrix(1j)

        self.assertIn("step size too small", str(error.exception))
        self.assertEqual(1j, error.exception.point)


class PruferAngleTest(unittest.TestCase):

    def setUp(self):
        self.solver = ShootingSolver(PotentialSamples.zero(0.0, 1.0), 0.0, 1.0)

    def test_given_below_first_eigenvalue_then_under_pi(self):
        angle = self.solver.prufer_angle(5.0, 0.0)

        self.assertGreater(angle, 0.0)
        self.assertLess(angle, numpy.pi)

    def test_given_between_eigenvalues_then_between_pi_and_two_pi(self):
        angle = self.solver.prufer_angle(20.0, 0.0)

        self.assertGreater(angle, numpy.pi)
        self.assertLess(angle, 2*numpy.pi)

    def test_given_negative_energy_then_angle_matches_solution(self):
        angle = self.solver.prufer_angle(-1.0, 0.0)

        self.assertAlmostEqual(numpy.arctan2(numpy.sinh(1), numpy.cosh(1)), angle, places=8)


class BracketRootsTest(unittest.TestCase):

    def test_given_sine_then_multiples_of_pi(self):
        roots = bracket_roots(numpy.sin, 3, 0.5, 10.0, 1.0)

        numpy.testing.assert_allclose([numpy.pi, 2*numpy.pi, 3*numpy.pi], roots, atol=1e-8)

    def test_given_close_roots_then_step_halved(self):
        roots = bracket_roots(lambda x: (x - 1.0)*(x - 1.1), 2, 0.0, 2.0, 0.5)

        numpy.testing.assert_allclose([1.0, 1.1], roots, atol=1e-8)

    def test_given_impossible_count_then_error(self):

        with self.assertRaises(RootFindingFailure) as error:
            bracket_roots(numpy.sin, 5, 0.5, 10.0, 1.0)

        self.assertIn("Located 3 roots", str(error.exception))
        self.assertIn("expected 5", str(error.exception))
