from scanpointgenerator import CompoundGenerator, LineGenerator

import numpy

DUPLICATE_TOL = 1e-12
CENTRE_TOL = 1e-9


class SpectralGridGenerator(object):
    """
    Generate real grids of spectral parameters and sample sets of complex points

    """

    def __init__(self):

        self.lambdas = numpy.array([])

    def generate_linear_points(self, start, stop, num_points):
        """
        Generate an evenly spaced grid of spectral parameters

        Args:
            start(float): First grid point
            stop(float): Last grid point
            num_points(int): Number of points, at least 2

        Returns:
            numpy.ndarray: The grid, also kept in self.lambdas

        """

        self.lambdas = self.linear_grid(start, stop, num_points)
        return self.lambdas

    @staticmethod
    def linear_grid(start, stop, num_points):

        if int(num_points) != num_points or num_points < 2:
            raise ValueError("Grid needs at least 2 points, got {}".format(num_points))
        if not start < stop:
            raise ValueError("Grid start {} must be below stop {}".format(start, stop))

        line = LineGenerator("lambda", "", float(start), float(stop), int(num_points))
        gen = CompoundGenerator([line], [], [])
        gen.prepare()

        return numpy.array([point.positions['lambda'] for point in gen.iterator()])

    @staticmethod
    def with_jump_windows(grid, centres, width, doublings=5):
        """
        Clear a symmetric window around every centre and place points at centre +- width*2^k

        Grid points inside a window are dropped. The window half-width
        shrinks to a third of the gap when two centres are closer than 3*width.

        Args:
            grid(numpy.ndarray): Increasing grid
            centres(list): Jump locations, e.g. eigenvalues
            width(float): Half-width of the cleared window
            doublings(int): Number of further offsets width*2, width*4, ... on each side

        Returns:
            numpy.ndarray: Strictly increasing grid

        """

        if not width > 0:
            raise ValueError("Window width must be positive, got {}".format(width))

        grid = numpy.asarray(grid, dtype=float)
        centres = numpy.unique(numpy.asarray(list(centres), dtype=float))
        if centres.size == 0:
            return grid
        centres = centres[numpy.concatenate([[True], numpy.diff(centres) > CENTRE_TOL])]

        spacing = numpy.diff(centres)
        left_gaps = numpy.concatenate([[numpy.inf], spacing])
        right_gaps = numpy.concatenate([spacing, [numpy.inf]])

        keep = numpy.ones(grid.shape, dtype=bool)
        extra = []
        for centre, left_gap, right_gap in zip(centres, left_gaps, right_gaps):
            half_width = min(width, left_gap/3.0, right_gap/3.0)
            keep &= numpy.abs(grid - centre) >= half_width
            extra.extend([centre - half_width, centre + half_width])
            for k in range(1, int(doublings) + 1):
                offset = half_width*2**k
                if offset <= left_gap/2.0:
                    extra.append(centre - offset)
                if offset <= right_gap/2.0:
                    extra.append(centre + offset)

        merged = numpy.unique(numpy.concatenate([grid[keep], extra]))
        merged = merged[(merged >= grid[0]) & (merged <= grid[-1])]

        distinct = numpy.concatenate([[True], numpy.diff(merged) > DUPLICATE_TOL])
        return merged[distinct]

    @staticmethod
    def away_from(grid, centres, radius):
        """Mask of grid points at distance at least radius from every centre"""
        grid = numpy.asarray(grid, dtype=float)
        centres = numpy.asarray(list(centres), dtype=float)
        if centres.size == 0:
            return numpy.ones(grid.shape, dtype=bool)
        distance = numpy.min(numpy.abs(grid[:, None] - centres[None, :]), axis=1)
        return distance >= radius

    @staticmethod
    def upper_half_plane_samples(num_points, rng, real_range=(-5.0, 5.0),
                                 imag_range=(0.1, 3.0)):
        """Uniform random points of the upper half-plane in a box"""
        real = rng.uniform(real_range[0], real_range[1], num_points)
        imag = rng.uniform(imag_range[0], imag_range[1], num_points)
        return real + 1j*imag
