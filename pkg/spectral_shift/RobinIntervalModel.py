"""
Robin realisations of -u'' + a u on an interval (0, L).

The realisation with coefficients (b0, b1) imposes -u'(0) = b0 u(0) and u'(L) = b1 u(L).
Its boundary data are taken with the outward normal: Neumann data (-u'(0), u'(L)) and
Dirichlet data (u(0), u(L)).

"""
import numpy

from spectral_shift.NevanlinnaLogarithm import DEFAULT_SCHEDULE, NevanlinnaEvaluator, \
    trace_im_log
from spectral_shift.NumericalErrors import NeumannEigenvalueHit, SingularFactor
from spectral_shift.ShootingSolver import PotentialSamples, ShootingSolver, bracket_roots
from spectral_shift.SpectralShiftGrid import SsfGrid, evaluate_grid

NEUMANN_TOL = 1e-12
FACTOR_TOL = 1e-12
DERIVATIVE_STEP = 1e-4


class RobinIntervalModel(object):
    """
    A pair of Robin realisations compared through a reference coefficient

    Args:
        length(float): Interval length L
        potential(PotentialSamples): Coefficient a on [0, L], zero if None
        beta0(tuple): Robin coefficients of the first realisation at (0, L)
        beta1(tuple): Robin coefficients of the second realisation at (0, L)
        beta_ref(float): Reference coefficient, above every entry of beta0 and beta1

    Raises:
        ValueError: beta_ref not strictly above the coefficients

    """

    def __init__(self, length, potential=None, beta0=(0.0, 0.0), beta1=(1.0, 1.0),
                 beta_ref=3.0):

        if not length > 0:
            raise ValueError("Interval length must be positive, got {}".format(length))
        self.length = float(length)
        self.potential = potential if potential is not None else \
            PotentialSamples.zero(0.0, self.length)

        self.betas = {}
        for p, beta in ((0, beta0), (1, beta1)):
            beta = numpy.asarray(beta, dtype=float)
            if beta.shape != (2,):
                raise ValueError("Robin coefficients must be 2-vectors, got {}".format(beta))
            if not numpy.all(beta < beta_ref):
                raise ValueError(
                    "Reference coefficient {} must exceed every Robin coefficient, "
                    "beta{} = {}".format(beta_ref, p, list(beta)))
            self.betas[p] = beta
        self.beta_ref = float(beta_ref)
        self.betas["ref"] = numpy.array([self.beta_ref, self.beta_ref])

        self.solver = ShootingSolver(self.potential, 0.0, self.length)
        self._eigenvalue_cache = {}

    def ntd(self, z):
        """
        Neumann-to-Dirichlet matrix mapping (-u'(0), u'(L)) to (u(0), u(L))

        Raises:
            NeumannEigenvalueHit: z is a Neumann eigenvalue

        """

        (c, s), (c_prime, s_prime) = self.solver.fundamental_matrix(z)
        if abs(c_prime) <= NEUMANN_TOL:
            raise NeumannEigenvalueHit("Neumann determinant {:.3e}".format(abs(c_prime)),
                                       point=z)

        dirichlet = numpy.array([[1, 0], [c, s]])
        neumann = numpy.array([[0, -1], [c_prime, s_prime]])
        return dirichlet.dot(numpy.linalg.inv(neumann))

    def weyl_from_ntd(self, p, ntd):
        """
        diag(1/(beta - beta_p)) (beta_p N - I) (beta N - I)^-1 for a given NtD matrix N

        Raises:
            SingularFactor: beta N - I numerically singular

        """

        identity = numpy.eye(2)
        factor = self.beta_ref*ntd - identity
        smallest = numpy.linalg.svd(factor, compute_uv=False)[-1]
        if smallest <= FACTOR_TOL:
            raise SingularFactor("beta N - I is singular: smallest singular value {:.3e}".format(
                smallest))

        beta_p = self.betas[p]
        scaled = beta_p[:, None]*ntd - identity
        return numpy.diag(1.0/(self.beta_ref - beta_p)).dot(scaled).dot(numpy.linalg.inv(factor))

    def weyl(self, p, z):
        return self.weyl_from_ntd(p, self.ntd(z))

    def weyl_evaluator(self, p):
        return NevanlinnaEvaluator(2, lambda z: self.weyl(p, z), name="M_{}".format(p))

    def ntd_evaluator(self):
        return NevanlinnaEvaluator(2, self.ntd, name="NtD")

    def boundary_trace(self, z):
        """(1/pi) tr Im (log M_1(z) - log M_0(z)), sharing one shooting solve"""
        ntd = self.ntd(z)
        evaluators = [NevanlinnaEvaluator(2, lambda _, p=p: self.weyl_from_ntd(p, ntd))
                      for p in (0, 1)]
        return trace_im_log(evaluators[1], z) - trace_im_log(evaluators[0], z)

    def ssf(self, grid, schedule=DEFAULT_SCHEDULE, power=1, workers=1):
        """
        Spectral shift function of the pair {A_beta0, A_beta1} from the two Weyl functions

        """

        values = evaluate_grid(self.boundary_trace, grid, schedule, workers)
        return SsfGrid(grid, values, schedule, power)

    def resolvent_trace_difference(self, z, step=DERIVATIVE_STEP):
        """
        tr((A_beta1 - z)^-1 - (A_beta0 - z)^-1) = tr(M_0^-1 M_0') - tr(M_1^-1 M_1'), with M'
        by central differences over one shared shooting solve per point

        """

        z = complex(z)
        ntd, above, below = self.ntd(z), self.ntd(z + step), self.ntd(z - step)

        total = 0j
        for p, sign in ((0, 1), (1, -1)):
            derivative = (self.weyl_from_ntd(p, above) - self.weyl_from_ntd(p, below))/(2*step)
            total += sign*numpy.trace(numpy.linalg.solve(self.weyl_from_ntd(p, ntd), derivative))
        return complex(total)

    def secular(self, p, lam):
        """Real secular function whose zeros are the eigenvalues of realisation p"""
        b0, b1 = self.betas[p]
        (c, s), (c_prime, s_prime) = self.solver.fundamental_matrix(lam)
        return float(((c_prime - b0*s_prime) - b1*(c - b0*s)).real)

    def counting(self, p, lam):
        """Number of eigenvalues of realisation p below lam, by Prufer angle"""
        b0, b1 = self.betas[p]
        angle = self.solver.prufer_angle(lam, numpy.arctan2(1.0, -b0))
        target = numpy.arctan2(1.0, b1)
        return max(0, int(numpy.ceil((angle - target)/numpy.pi)))

    def spectral_lower_bound(self):
        positive = max(0.0, numpy.max(numpy.concatenate([self.betas[0], self.betas[1],
                                                         self.betas["ref"]])))
        return self.potential.minimum() - 4*(positive + 1.0/self.length)**2 - 1.0

    def eigenvalues(self, p, lam_max):
        """
        Eigenvalues up to lam_max of realisation p (0, 1 or "ref")

        Raises:
            RootFindingFailure: The scan cannot separate the eigenvalues

        """

        key = (p, float(lam_max))
        if key not in self._eigenvalue_cache:
            lower = self.spectral_lower_bound()
            expected = self.counting(p, lam_max)
            step = min(0.5, numpy.pi**2/(4*self.length**2))
            self._eigenvalue_cache[key] = bracket_roots(lambda lam: self.secular(p, lam),
                                                        expected, lower, lam_max, step)
        return self._eigenvalue_cache[key]

    def counting_difference(self, grid, lam_max=None):
        """N(lam, A_beta0) - N(lam, A_beta1) on a grid from the eigenvalue oracle"""
        grid = numpy.asarray(grid, dtype=float)
        if lam_max is None:
            lam_max = grid[-1] + 1.0
        first = self.eigenvalues(0, lam_max)
        second = self.eigenvalues(1, lam_max)
        return numpy.array([numpy.count_nonzero(first < lam) - numpy.count_nonzero(second < lam)
                            for lam in grid], dtype=float)
