import logging

import numpy
from scipy import integrate, optimize

from spectral_shift.NumericalErrors import OdeSolveFailure, RootFindingFailure

ODE_RTOL = 1e-10
ODE_ATOL = 1e-13
ROOT_XTOL = 1e-9
MAX_HALVINGS = 8

log = logging.getLogger(__name__)


class PotentialSamples(object):
    """
    A real potential sampled on a uniform mesh, linearly interpolated and zero outside

    Args:
        values(list): At least two samples
        start(float): First mesh point
        stop(float): Last mesh point

    """

    def __init__(self, values, start, stop):

        values = numpy.asarray(values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("Potential needs at least 2 samples, got {}".format(values.size))
        if not numpy.all(numpy.isfinite(values)):
            raise ValueError("Potential samples must be finite")
        if not start < stop:
            raise ValueError("Potential mesh start {} must be below stop {}".format(start, stop))

        self.values = values
        self.start = float(start)
        self.stop = float(stop)
        self.mesh = numpy.linspace(self.start, self.stop, values.size)

    @classmethod
    def constant(cls, value, start, stop):
        return cls([value, value], start, stop)

    @classmethod
    def zero(cls, start, stop):
        return cls.constant(0.0, start, stop)

    def __call__(self, x):
        return numpy.interp(x, self.mesh, self.values, left=0.0, right=0.0)

    def is_zero(self):
        return not numpy.any(self.values)

    def minimum(self):
        return float(numpy.min(self.values))


class ShootingSolver(object):
    """
    Initial value solves of -u'' + q u = z u on an interval

    Args:
        potential(PotentialSamples): The coefficient q
        start(float): Left endpoint, where initial data is imposed
        stop(float): Right endpoint

    """

    def __init__(self, potential, start, stop):

        self.potential = potential
        self.start = float(start)
        self.stop = float(stop)

    def _solve(self, rhs, initial, point):
        solution = integrate.solve_ivp(rhs, (self.start, self.stop), initial, method="DOP853",
                                       rtol=ODE_RTOL, atol=ODE_ATOL)
        if not solution.success:
            raise OdeSolveFailure("Shooting solve failed: {}".format(solution.message),
                                  point=point)
        return solution.y[:, -1]

    def fundamental_matrix(self, z):
        """
        Values at the right endpoint of the fundamental system c, s with
        c(start) = 1, c'(start) = 0, s(start) = 0, s'(start) = 1

        Returns:
            numpy.ndarray: [[c, s], [c', s']] as a complex 2 x 2 matrix

        """

        z = complex(z)
        potential = self.potential

        def rhs(x, y):
            coefficient = potential(x) - z
            return numpy.array([y[1], coefficient*y[0], y[3], coefficient*y[2]])

        c, c_prime, s, s_prime = self._solve(
            rhs, numpy.array([1, 0, 0, 1], dtype=complex), z)
        return numpy.array([[c, s], [c_prime, s_prime]])

    def prufer_angle(self, lam, initial_angle):
        """
        Prufer angle at the right endpoint for real energy lam

        The angle obeys theta' = cos^2 theta + (lam - q) sin^2 theta, with u = r sin theta,
        u' = r cos theta.

        """

        potential = self.potential

        def rhs(x, theta):
            sine = numpy.sin(theta)
            return numpy.cos(theta)**2 + (lam - potential(x))*sine**2

        return float(self._solve(rhs, numpy.array([float(initial_angle)]), lam)[0])


def bracket_roots(function, expected_count, lower, upper, step):
    """
    Find the roots of a real function on [lower, upper] by sign-change scan and brentq

    The scan step is halved until the number of roots found matches expected_count.

    Args:
        function(callable): Real function of a real variable
        expected_count(int): Number of roots in the interval
        lower(float): Scan start, below every root
        upper(float): Scan stop
        step(float): Initial scan step

    Returns:
        numpy.ndarray: Sorted roots, each to within ROOT_XTOL

    Raises:
        RootFindingFailure: Count still inconsistent after MAX_HALVINGS refinements

    """

    found = []
    for _ in range(MAX_HALVINGS + 1):
        num = int(numpy.ceil((upper - lower)/step)) + 1
        grid = numpy.linspace(lower, upper, num)
        values = numpy.array([function(x) for x in grid])

        found = [x for x, value in zip(grid, values) if value == 0]
        for k in range(num - 1):
            if values[k]*values[k + 1] < 0:
                found.append(optimize.brentq(function, grid[k], grid[k + 1], xtol=ROOT_XTOL))

        if len(found) == expected_count:
            return numpy.sort(found)

        log.debug("Found %d of %d roots with step %g, halving", len(found), expected_count,
                  step)
        step /= 2.0

    raise RootFindingFailure("Located {} roots on [{}, {}] but expected {}".format(
        len(found), lower, upper, expected_count))
