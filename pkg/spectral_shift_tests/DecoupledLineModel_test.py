from spectral_shift.DecoupledLineModel import DecoupledLineModel
from spectral_shift.NevanlinnaLogarithm import check_nevanlinna
from spectral_shift.NumericalErrors import DirichletEigenvalueHit
from spectral_shift.ShootingSolver import PotentialSamples
from spectral_shift.SpectralGridGenerator import SpectralGridGenerator
from spectral_shift.SpectralShiftGrid import SsfGrid, trace_formula_entry
import unittest

from mock import patch
import numpy
from scipy import linalg


def square_well(depth=1.0, cutoff=1.0):
    return DecoupledLineModel(cutoff, PotentialSamples.constant(-depth, -cutoff, cutoff))


class InitTest(unittest.TestCase):

    def test_default_attributes_set(self):
        model = DecoupledLineModel(1.0)

        self.assertEqual(1.0, model.cutoff)
        self.assertTrue(model.potential.is_zero())

    def test_given_bad_cutoff_then_error(self):

        with self.assertRaises(ValueError) as error:
            DecoupledLineModel(-1.0)

        self.assertIn("Cutoff R must be positive", str(error.exception))

    def test_given_potential_outside_cutoff_then_error(self):
        expected_error = "Potential mesh [-2.0, 2.0] must lie inside [-R, R] = [-1.0, 1.0]"

        with self.assertRaises(ValueError) as error:
            DecoupledLineModel(1.0, PotentialSamples.constant(-1.0, -2.0, 2.0))

        self.assertEqual(expected_error, str(error.exception))


class DirichletToNeumannTest(unittest.TestCase):

    def test_given_minus_one_then_closed_form(self):
        model = DecoupledLineModel(1.0)
        coth, csch = numpy.cosh(2)/numpy.sinh(2), 1/numpy.sinh(2)

        numpy.testing.assert_allclose([[coth, -csch], [-csch, coth]],
                                      model.interior_dtn(-1.0, False), atol=1e-8)
        numpy.testing.assert_allclose(numpy.eye(2), model.exterior_dtn(-1.0))
        numpy.testing.assert_allclose(
            numpy.linalg.inv([[coth + 1, -csch], [-csch, coth + 1]]),
            model.boundary_function(-1.0, False), atol=1e-8)

    def test_given_zero_potential_then_both_maps_equal(self):
        model = DecoupledLineModel(1.0)
        z = 3.0 + 0.2j

        numpy.testing.assert_allclose(model.boundary_function(z, False),
                                      model.boundary_function(z, True), atol=1e-12)

    def test_given_conjugate_point_then_adjoint(self):
        model = square_well()
        z = 2.0 + 0.3j

        numpy.testing.assert_allclose(model.boundary_function(z, True).conj().T,
                                      model.boundary_function(z.conjugate(), True), atol=1e-9)

    def test_given_dirichlet_eigenvalue_then_error(self):
        model = DecoupledLineModel(1.0)
        singular = numpy.array([[1.0, 0.0], [0.0, 1.0]])

        with patch.object(model.solvers[False], "fundamental_matrix", return_value=singular):
            with self.assertRaises(DirichletEigenvalueHit) as error:
                model.interior_dtn((numpy.pi/2)**2, False)

        self.assertIn("Dirichlet determinant", str(error.exception))

    def test_evaluators_are_nevanlinna(self):
        model = square_well()
        points = SpectralGridGenerator.upper_half_plane_samples(
            50, numpy.random.default_rng(4), (-3.0, 30.0), (0.05, 2.0))

        for with_potential in (False, True):
            lowest, reflection = check_nevanlinna(model.evaluator(with_potential), points)

            self.assertGreaterEqual(lowest, -1e-8)
            self.assertLess(reflection, 1e-8)


class DirichletCountingTest(unittest.TestCase):

    def test_given_free_interior_then_one_below_three(self):
        self.assertEqual(1, DecoupledLineModel(1.0).dirichlet_counting(False, 3.0))

    def test_given_negative_energy_then_none(self):
        self.assertEqual(0, DecoupledLineModel(1.0).dirichlet_counting(False, -1.0))

    def test_given_free_interior_then_eigenvalues(self):
        eigenvalues = DecoupledLineModel(1.0).dirichlet_eigenvalues(False, 40.0)

        numpy.testing.assert_allclose((numpy.arange(1, 5)*numpy.pi/2)**2, eigenvalues, atol=1e-7)

    def test_given_deep_well_then_matches_finite_differences(self):
        model = square_well(depth=5.0)
        fd_eigenvalues = linalg.eigh_tridiagonal(*model.discretized_operator(True, 1.0, 0.01),
                                                 eigvals_only=True)

        count = model.dirichlet_counting(True, 0.0)

        self.assertEqual(numpy.count_nonzero(fd_eigenvalues < 0), count)
        self.assertEqual(1, count)

    def test_given_square_well_then_one_bound_state(self):
        model = square_well()

        self.assertEqual(1, model.bound_state_count())
        # even state k tan k = sqrt(1 - k^2) with k = sqrt(E + 1)
        self.assertAlmostEqual(-0.45375, model.bound_states()[0], delta=5e-4)

    def test_given_bound_state_then_continuum_not_discretised_value(self):
        model = square_well()
        fd_lowest = linalg.eigh_tridiagonal(*model.discretized_operator(True, 40.0, 0.01),
                                            eigvals_only=True, select="i",
                                            select_range=(0, 0))[0]

        self.assertAlmostEqual(0.0, model.bound_state_function(model.bound_states()[0]),
                               places=6)
        self.assertGreater(abs(fd_lowest - model.bound_states()[0]), 1e-3)

    def test_given_zero_potential_then_no_bound_states(self):
        model = DecoupledLineModel(1.0)

        self.assertEqual(0, model.bound_state_count())
        self.assertEqual(0, model.bound_states().size)

    def test_given_deep_well_then_bound_states_match_finite_differences(self):
        model = square_well(depth=5.0)
        fd_eigenvalues = linalg.eigh_tridiagonal(*model.discretized_operator(True, 40.0, 0.01),
                                                 eigvals_only=True)

        bound_states = model.bound_states()

        fd_bound = fd_eigenvalues[fd_eigenvalues < 0]
        self.assertEqual(fd_bound.size, bound_states.size)
        numpy.testing.assert_allclose(fd_bound, bound_states, atol=5e-2)

    def test_smoothed_counting(self):
        value = DecoupledLineModel.smoothed_counting([1.0, 3.0], 2.0 + 1e-9j)

        self.assertAlmostEqual(1.0, value, places=6)


class DecoupledSsfTest(unittest.TestCase):

    def test_given_zero_potential_then_zero(self):
        model = DecoupledLineModel(1.0)

        xi = model.ssf([-1.0, 1.0, 2.5, 10.0]).xi

        numpy.testing.assert_allclose([0.0, 0.0, 0.0, 0.0], xi, atol=1e-12)

    def test_given_well_then_zero_below_bound_state(self):
        model = square_well()

        xi = model.ssf([-1.5, -1.0, -0.6]).xi

        numpy.testing.assert_allclose([0.0, 0.0, 0.0], xi, atol=1e-3)

    def test_given_well_then_minus_one_between_bound_state_and_zero(self):
        model = square_well()

        xi = model.ssf([-0.3, -0.1]).xi

        numpy.testing.assert_allclose([-1.0, -1.0], xi, atol=1e-3)

    def test_given_well_then_first_power_trace_formula(self):
        model = square_well()
        lambdas = SpectralGridGenerator.with_jump_windows(
            SpectralGridGenerator.linear_grid(-1.5, 60.0, 124), [model.bound_states()[0], 0.0],
            1e-3, doublings=8)

        grid = model.ssf(lambdas)
        entry = trace_formula_entry(model.discretized_trace_difference(1j), grid, 1j,
                                    tail_bound=1e-2)

        self.assertLessEqual(entry.relative_residual, 5e-2)

    def test_given_well_then_plateau_kept_between_bound_state_and_zero(self):
        model = square_well()
        lambdas = SpectralGridGenerator.with_jump_windows(
            SpectralGridGenerator.linear_grid(-1.5, 1.0, 6), [model.bound_states()[0], 0.0],
            1e-2, doublings=0)

        grid = model.ssf(lambdas)

        plateau = (grid.lambdas > model.bound_states()[0]) & (grid.lambdas < 0.0)
        numpy.testing.assert_allclose(numpy.full(2, -1.0), grid.xi[plateau], atol=1e-3)

    def test_given_workers_then_same_values(self):
        model = square_well()

        inline = model.ssf([-0.3, 1.0, 4.0])
        pooled = model.ssf([-0.3, 1.0, 4.0], workers=3)

        self.assertIsInstance(pooled, SsfGrid)
        numpy.testing.assert_array_equal(inline.xi, pooled.xi)
