"""
Decoupling of a compactly supported potential on the line.

Dirichlet conditions at -R and R split -u'' + V u into an interior part on (-R, R) and an
exterior part. With D_int, D_ext the Dirichlet-to-Neumann maps of the two parts over the
boundary points {-R, R} (outward derivatives, exterior normal pointing out of the exterior),
the spectral shift function of {-u'', -u'' + V u} is

    xi = (1/pi) Im tr (log NN(lam + i0) - log NN_V(lam + i0)) + N(lam, A+) - N(lam, B+)

where NN = (D_int + D_ext)^-1 and A+, B+ are the interior Dirichlet operators. The
dual-pairing isomorphism of the boundary space is the identity here.

"""
import logging

import numpy
from scipy import linalg

from spectral_shift.DeltaPointModel import upper_sqrt
from spectral_shift.NevanlinnaLogarithm import DEFAULT_SCHEDULE, NevanlinnaEvaluator, \
    trace_im_log
from spectral_shift.NumericalErrors import DirichletEigenvalueHit
from spectral_shift.ShootingSolver import PotentialSamples, ShootingSolver, bracket_roots
from spectral_shift.SpectralShiftGrid import SsfGrid, evaluate_grid

DIRICHLET_TOL = 1e-12
EIGENVALUE_MARGIN = 1.0
BOUND_STATE_TOL = 1e-9
BOUND_STATE_EDGE = 1e-10

log = logging.getLogger(__name__)


class DecoupledLineModel(object):
    """
    Args:
        cutoff(float): Half width R of the interaction region
        potential(PotentialSamples): V sampled over [-R, R], zero outside; zero if None

    Raises:
        ValueError: Bad cutoff or potential mesh

    """

    def __init__(self, cutoff, potential=None):

        if not cutoff > 0:
            raise ValueError("Cutoff R must be positive, got {}".format(cutoff))
        self.cutoff = float(cutoff)
        if potential is None:
            potential = PotentialSamples.zero(-self.cutoff, self.cutoff)
        if potential.start < -self.cutoff or potential.stop > self.cutoff:
            raise ValueError("Potential mesh [{}, {}] must lie inside [-R, R] = [{}, {}]".format(
                potential.start, potential.stop, -self.cutoff, self.cutoff))
        self.potential = potential

        self.solvers = {
            False: ShootingSolver(PotentialSamples.zero(-self.cutoff, self.cutoff),
                                  -self.cutoff, self.cutoff),
            True: ShootingSolver(potential, -self.cutoff, self.cutoff)}
        self._eigenvalue_cache = {}
        self._bound_states = None

    def interior_dtn(self, z, with_potential):
        """
        Map (u(-R), u(R)) to outward derivatives (-u'(-R), u'(R)) on (-R, R)

        Raises:
            DirichletEigenvalueHit: z is an interior Dirichlet eigenvalue

        """

        (c, s), (c_prime, s_prime) = self.solvers[with_potential].fundamental_matrix(z)
        if abs(s) <= DIRICHLET_TOL:
            raise DirichletEigenvalueHit("Dirichlet determinant {:.3e}".format(abs(s)), point=z)

        dirichlet = numpy.array([[1, 0], [c, s]])
        neumann = numpy.array([[0, -1], [c_prime, s_prime]])
        return neumann.dot(numpy.linalg.inv(dirichlet))

    @staticmethod
    def exterior_dtn(z):
        """Exterior map -i sqrt(z) I from the decaying solutions exp(i sqrt(z) |x|)"""
        return -1j*upper_sqrt(z)*numpy.eye(2)

    def boundary_function(self, z, with_potential):
        """(D_int(z) + D_ext(z))^-1"""
        return numpy.linalg.inv(self.interior_dtn(z, with_potential) + self.exterior_dtn(z))

    def evaluator(self, with_potential):
        return NevanlinnaEvaluator(2, lambda z: self.boundary_function(z, with_potential),
                                   name="NN_V" if with_potential else "NN")

    def dirichlet_counting(self, with_potential, lam):
        """Interior Dirichlet eigenvalues below lam, by Prufer angle"""
        angle = self.solvers[with_potential].prufer_angle(lam, 0.0)
        return max(0, int(numpy.ceil(angle/numpy.pi)) - 1)

    def dirichlet_eigenvalues(self, with_potential, lam_max):
        """
        Interior Dirichlet eigenvalues up to lam_max, roots of s(lam)

        """

        key = (with_potential, float(lam_max))
        if key not in self._eigenvalue_cache:
            solver = self.solvers[with_potential]
            lower = min(0.0, self.potential.minimum() if with_potential else 0.0) - 1.0
            step = min(0.5, numpy.pi**2/(4*(2*self.cutoff)**2))
            self._eigenvalue_cache[key] = bracket_roots(
                lambda lam: float(solver.fundamental_matrix(lam)[0, 1].real),
                self.dirichlet_counting(with_potential, lam_max), lower, lam_max, step)
        return self._eigenvalue_cache[key]

    def bound_state_count(self):
        """Negative eigenvalues of -u'' + V u on the line, from the zero energy Prufer angle"""
        angle = self.solvers[True].prufer_angle(0.0, numpy.pi/2)
        zeros, fraction = divmod(angle/numpy.pi, 1.0)
        # A linear continuation past R has one more zero when u u' < 0 at R
        return int(zeros) + (1 if fraction > 0.5 + BOUND_STATE_TOL else 0)

    def bound_state_function(self, energy):
        """
        c' + kappa (s' + c) + kappa^2 s at energy = -kappa^2 < 0, zero exactly when the
        solution growing like e^(kappa x) on the left decays like e^(-kappa x) on the right

        """

        kappa = numpy.sqrt(-energy)
        matrix = numpy.real(self.solvers[True].fundamental_matrix(energy))
        (c, s), (dc, ds) = matrix
        return float(dc + kappa*(ds + c) + kappa**2*s)

    def bound_states(self):
        """
        Negative eigenvalues of -u'' + V u on the whole line, where the spectral shift function
        steps by -1

        Returns:
            numpy.ndarray: Sorted bound state energies, empty if V has none

        """

        if self._bound_states is None:
            count = self.bound_state_count()
            if count == 0:
                self._bound_states = numpy.array([])
            else:
                lower = self.potential.minimum()
                step = min(0.5, -lower/4)
                self._bound_states = bracket_roots(self.bound_state_function, count, lower,
                                                   -BOUND_STATE_EDGE, step)
                log.debug("Bound states of the line operator: %s", self._bound_states)
        return self._bound_states

    @staticmethod
    def smoothed_counting(eigenvalues, z):
        """
        sum_k (1 - arg(z - mu_k)/pi), which tends to the number of mu_k below Re z as Im z
        decreases to 0

        """

        return float(numpy.sum(1.0 - numpy.angle(z - numpy.asarray(eigenvalues))/numpy.pi))

    def boundary_trace(self, z, free_eigenvalues=(), well_eigenvalues=()):
        return trace_im_log(self.evaluator(False), z) - trace_im_log(self.evaluator(True), z) + \
            self.smoothed_counting(free_eigenvalues, z) - \
            self.smoothed_counting(well_eigenvalues, z)

    def ssf(self, grid, schedule=DEFAULT_SCHEDULE, power=1, workers=1):
        """
        Spectral shift function of {-u'', -u'' + V u} from the decoupled boundary functions

        """

        grid = numpy.asarray(grid, dtype=float)
        lam_max = grid[-1] + EIGENVALUE_MARGIN
        free = self.dirichlet_eigenvalues(False, lam_max)
        well = self.dirichlet_eigenvalues(True, lam_max)
        log.debug("Interior Dirichlet eigenvalues: free %s, with potential %s", free, well)

        values = evaluate_grid(lambda z: self.boundary_trace(z, free, well), grid, schedule,
                               workers)
        return SsfGrid(grid, values, schedule, power)

    def discretized_operator(self, with_potential, box, step):
        """
        Three-point finite difference matrix of -u'' + V u on [-box, box] with Dirichlet walls,
        as diagonal and off-diagonal vectors

        """

        num = int(round(2*box/step)) - 1
        x = numpy.linspace(-box, box, num + 2)[1:-1]
        spacing = x[1] - x[0]
        diagonal = numpy.full(num, 2.0/spacing**2)
        if with_potential:
            diagonal = diagonal + self.potential(x)
        off_diagonal = numpy.full(num - 1, -1.0/spacing**2)
        return diagonal, off_diagonal

    def discretized_trace_difference(self, z, power=1, box=40.0, step=0.01):
        """tr((B - z)^-m - (A - z)^-m) for the finite difference discretisations"""
        traces = []
        for with_potential in (True, False):
            eigenvalues = linalg.eigh_tridiagonal(
                *self.discretized_operator(with_potential, box, step), eigvals_only=True)
            traces.append(numpy.sum((eigenvalues - z)**(-power)))
        return traces[0] - traces[1]
