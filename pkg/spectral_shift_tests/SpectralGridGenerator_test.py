from spectral_shift.SpectralGridGenerator import SpectralGridGenerator
import unittest

from mock import patch, MagicMock
import numpy


class InitTest(unittest.TestCase):

    def test_default_attributes_set(self):
        self.GridGen = SpectralGridGenerator()

        self.assertEqual(0, self.GridGen.lambdas.size)


class LinearPointsTest(unittest.TestCase):

    def setUp(self):
        self.GridGen = SpectralGridGenerator()

    def test_linear_points(self):
        self.GridGen.generate_linear_points(-1.0, 2.0, 4)

        numpy.testing.assert_allclose([-1.0, 0.0, 1.0, 2.0], self.GridGen.lambdas)

    def test_given_301_points_then_step(self):
        lambdas = self.GridGen.generate_linear_points(-1.0, 2.0, 301)

        self.assertEqual(301, lambdas.size)
        numpy.testing.assert_allclose(numpy.full(300, 0.01), numpy.diff(lambdas), atol=1e-12)

    @patch('spectral_shift.SpectralGridGenerator.CompoundGenerator')
    @patch('spectral_shift.SpectralGridGenerator.LineGenerator')
    def test_given_range_then_line_generator_called(self, line_mock, compound_mock):
        point = MagicMock()
        point.positions = {'lambda': 0.5}
        compound_mock.return_value.iterator.return_value = [point]

        lambdas = SpectralGridGenerator.linear_grid(0.0, 1.0, 3)

        line_mock.assert_called_once_with("lambda", "", 0.0, 1.0, 3)
        compound_mock.assert_called_once_with([line_mock.return_value], [], [])
        compound_mock.return_value.prepare.assert_called_once_with()
        numpy.testing.assert_allclose([0.5], lambdas)

    def test_given_one_point_then_error(self):
        expected_error = "Grid needs at least 2 points, got 1"

        with self.assertRaises(ValueError) as error:
            self.GridGen.generate_linear_points(0.0, 1.0, 1)

        self.assertEqual(expected_error, str(error.exception))

    def test_given_reversed_range_then_error(self):
        expected_error = "Grid start 1.0 must be below stop 0.0"

        with self.assertRaises(ValueError) as error:
            self.GridGen.generate_linear_points(1.0, 0.0, 5)

        self.assertEqual(expected_error, str(error.exception))


class JumpWindowsTest(unittest.TestCase):

    def test_given_centre_then_mirrored_offsets(self):
        grid = SpectralGridGenerator.with_jump_windows([0.0, 0.5, 1.0], [0.5], 0.01, doublings=2)

        numpy.testing.assert_allclose([0.0, 0.46, 0.48, 0.49, 0.51, 0.52, 0.54, 1.0], grid)

    def test_given_point_inside_window_then_removed(self):
        grid = SpectralGridGenerator.with_jump_windows([0.0, 0.501, 1.0], [0.5], 0.01,
                                                       doublings=0)

        numpy.testing.assert_allclose([0.0, 0.49, 0.51, 1.0], grid)

    def test_given_close_centres_then_window_shrinks(self):
        grid = SpectralGridGenerator.with_jump_windows([0.0, 1.0], [0.5, 0.53], 0.02,
                                                       doublings=1)

        numpy.testing.assert_allclose([0.0, 0.48, 0.49, 0.51, 0.52, 0.54, 0.55, 1.0], grid)

    def test_given_duplicate_centres_then_merged(self):
        grid = SpectralGridGenerator.with_jump_windows([0.0, 1.0], [0.5, 0.5 + 1e-12], 0.1,
                                                       doublings=0)

        numpy.testing.assert_allclose([0.0, 0.4, 0.6, 1.0], grid)

    def test_given_no_centres_then_grid_unchanged(self):
        grid = SpectralGridGenerator.with_jump_windows([0.0, 1.0], [], 0.1)

        numpy.testing.assert_allclose([0.0, 1.0], grid)

    def test_given_bad_width_then_error(self):

        with self.assertRaises(ValueError) as error:
            SpectralGridGenerator.with_jump_windows([0.0, 1.0], [0.5], 0.0)

        self.assertEqual("Window width must be positive, got 0.0", str(error.exception))


class SamplesTest(unittest.TestCase):

    def test_away_from(self):
        mask = SpectralGridGenerator.away_from([0.0, 0.5, 1.0], [0.45], 0.1)

        numpy.testing.assert_array_equal([True, False, True], mask)

    def test_away_from_no_centres(self):
        mask = SpectralGridGenerator.away_from([0.0, 1.0], [], 0.1)

        numpy.testing.assert_array_equal([True, True], mask)

    def test_upper_half_plane_samples_in_box(self):
        samples = SpectralGridGenerator.upper_half_plane_samples(
            20, numpy.random.default_rng(0), (-1.0, 1.0), (0.5, 2.0))

        self.assertEqual(20, samples.size)
        self.assertTrue(numpy.all(samples.imag >= 0.5))
        self.assertTrue(numpy.all(numpy.abs(samples.real) <= 1.0))
