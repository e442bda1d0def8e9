from spectral_shift.SsfPlotter import HASH_SALT, write_svg
from spectral_shift.SpectralShiftGrid import SsfGrid
import os
import tempfile
import unittest

from mock import patch
import numpy


def step_grid():
    lambdas = numpy.linspace(-1.0, 2.0, 31)
    xi = ((lambdas > 0) & (lambdas < 1)).astype(float)
    return SsfGrid(lambdas, xi)


class WriteSvgTest(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_given_grid_then_svg_written(self):
        write_svg(step_grid(), self.path("xi.svg"))

        with open(self.path("xi.svg")) as stream:
            content = stream.read()
        self.assertIn("<svg", content)
        self.assertNotIn("<dc:date>", content)

    def test_given_same_grid_twice_then_same_bytes(self):
        write_svg(step_grid().with_oracle(step_grid().xi), self.path("first.svg"), "delta")
        write_svg(step_grid().with_oracle(step_grid().xi), self.path("second.svg"), "delta")

        with open(self.path("first.svg"), "rb") as first, \
                open(self.path("second.svg"), "rb") as second:
            self.assertEqual(first.read(), second.read())

    @patch('spectral_shift.SsfPlotter.Figure')
    def test_given_oracle_then_dashed_second_line(self, figure_mock):
        axes = figure_mock.return_value.add_subplot.return_value

        write_svg(step_grid().with_oracle(step_grid().xi), "xi.svg", title="robin")

        self.assertEqual(2, axes.plot.call_count)
        self.assertEqual("--", axes.plot.call_args_list[1][1]["linestyle"])
        axes.set_title.assert_called_once_with("robin")
        figure_mock.return_value.savefig.assert_called_once_with(
            "xi.svg", format="svg", metadata={"Date": None})

    @patch('spectral_shift.SsfPlotter.matplotlib.rc_context')
    @patch('spectral_shift.SsfPlotter.Figure')
    def test_hash_salt_fixed(self, figure_mock, context_mock):
        write_svg(step_grid(), "xi.svg")

        context_mock.assert_called_once_with({"svg.hashsalt": HASH_SALT,
                                              "svg.fonttype": "path"})
        axes = figure_mock.return_value.add_subplot.return_value
        self.assertEqual(1, axes.plot.call_count)
        axes.legend.assert_not_called()
