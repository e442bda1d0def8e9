import numpy
from scipy import special

from spectral_shift.HermitianOperator import HermitianOperator, imaginary_part, real_part, \
    random_unitary
from spectral_shift.NevanlinnaLogarithm import NevanlinnaEvaluator
from spectral_shift.NumericalErrors import SingularWeyl, SpectrumHit

INJECTIVITY_TOL = 1e-10
COUPLING_TOL = 1e-10
SIGN_TOL = 1e-10
WEYL_SINGULAR_TOL = 1e-12


class GammaField(object):
    """
    The gamma field z -> (A - zI)^-1 G of a perturbation pair

    Args:
        pair(PerturbationPair): Owning pair

    """

    def __init__(self, pair):

        self.pair = pair

    def __call__(self, z):
        return self.pair.a_op.resolvent(z).dot(self.pair.g_map)

    def shift_residual(self, z, z0):
        """
        Residual of gamma(z) = (I + (z - z0)(A - zI)^-1) gamma(z0)

        """

        identity = numpy.eye(self.pair.n)
        shifted = (identity + (z - z0)*self.pair.a_op.resolvent(z)).dot(self(z0))
        return numpy.linalg.norm(self(z) - shifted, 2)


class PerturbationPair(object):
    """
    The pair {A, B = A + G T G*} with boundary space of dimension d

    Args:
        a_op(HermitianOperator): The unperturbed operator A (n x n)
        g_map(array_like): Injective n x d coupling map G
        t_coupling(array_like): Invertible Hermitian d x d matrix T
        sign_checkpoint(float): Optional real point zeta0 for the sign condition

    Raises:
        ValueError: Any of the invariants is violated

    """

    def __init__(self, a_op, g_map, t_coupling, sign_checkpoint=None):

        if not isinstance(a_op, HermitianOperator):
            a_op = HermitianOperator(a_op)

        g_map = numpy.array(g_map, dtype=complex)
        if g_map.ndim == 1:
            g_map = g_map.reshape(-1, 1)
        if g_map.ndim != 2 or g_map.shape[0] != a_op.dim:
            raise ValueError("G must have {} rows, got shape {}".format(a_op.dim, g_map.shape))
        smallest = numpy.linalg.svd(g_map, compute_uv=False)[-1]
        if g_map.shape[1] > a_op.dim or smallest <= INJECTIVITY_TOL:
            raise ValueError("G is not injective: smallest singular value {:.3e}".format(
                smallest if g_map.shape[1] <= a_op.dim else 0.0))

        try:
            t_coupling = HermitianOperator(t_coupling)
        except ValueError as error:
            raise ValueError("T coupling: {}".format(error))
        if t_coupling.dim != g_map.shape[1]:
            raise ValueError("T must be {0}x{0} to match G, got {1}x{1}".format(
                g_map.shape[1], t_coupling.dim))
        if numpy.min(numpy.abs(t_coupling.eigenvalues)) <= COUPLING_TOL:
            raise ValueError("T is not invertible: smallest |eigenvalue| {:.3e}".format(
                numpy.min(numpy.abs(t_coupling.eigenvalues))))

        self.a_op = a_op
        self.g_map = g_map
        self.t_coupling = t_coupling
        self.n = a_op.dim
        self.d = g_map.shape[1]
        self.b_op = HermitianOperator(
            real_part(a_op.entries + g_map.dot(t_coupling.entries).dot(g_map.conj().T)))
        self.t_inverse = numpy.linalg.inv(t_coupling.entries)
        self.gamma = GammaField(self)
        self.sign_checkpoint = sign_checkpoint

        if sign_checkpoint is not None:
            self._check_sign_condition(float(sign_checkpoint))

    @classmethod
    def random(cls, n, d, rng, definite=True):
        """
        Random pair with spectrum of A in [-3, 3], Gaussian G and well-conditioned T

        Args:
            n(int): Dimension of A
            d(int): Boundary dimension, at most n
            rng(numpy.random.Generator): Source of randomness
            definite(bool): Make T positive definite, otherwise give it both signs

        """

        a_op = HermitianOperator.random(n, rng)
        g_map = (rng.normal(size=(n, d)) + 1j*rng.normal(size=(n, d)))/numpy.sqrt(2*n)
        unitary = random_unitary(d, rng)
        couplings = rng.uniform(0.5, 2.0, d)
        if not definite:
            couplings[::2] *= -1
        t_coupling = real_part((unitary*couplings).dot(unitary.conj().T))
        return cls(a_op, g_map, t_coupling)

    def is_sign_definite(self):
        """T positive definite, the sign condition at any point below the spectra"""
        return bool(numpy.min(self.t_coupling.eigenvalues) > 0)

    def spectral_bounds(self):
        eigenvalues = numpy.concatenate([self.a_op.eigenvalues, self.b_op.eigenvalues])
        return numpy.min(eigenvalues), numpy.max(eigenvalues)

    def _check_sign_condition(self, zeta0):
        for operator, label in ((self.a_op, "A"), (self.b_op, "B")):
            if operator.distance_to_spectrum(zeta0) <= SIGN_TOL:
                raise ValueError("Sign checkpoint {} lies in the spectrum of {}".format(
                    zeta0, label))

        if self.is_sign_definite() and zeta0 < self.spectral_bounds()[0]:
            difference = self.a_op.resolvent(zeta0) - self.b_op.resolvent(zeta0)
            lowest = numpy.min(numpy.linalg.eigvalsh(real_part(difference)))
            if lowest < -SIGN_TOL:
                raise ValueError(
                    "Sign condition fails at {}: resolvent difference has eigenvalue {:.3e}".format(
                        zeta0, lowest))

    def weyl_eval(self, z):
        """
        Weyl function M(z) = T^-1 + G*(A - zI)^-1 G

        Raises:
            SpectrumHit: z in the spectrum of A

        """

        return self.t_inverse + self.g_map.conj().T.dot(self.a_op.resolvent(z)).dot(self.g_map)

    def gamma_eval(self, z):
        return self.gamma(z)

    def weyl_derivative(self, z, order):
        """
        k-th derivative k! G*(A - zI)^-(k+1) G of the Weyl function

        Args:
            z(complex): Spectral parameter
            order(int): Derivative order k >= 1

        """

        if int(order) != order or order < 1:
            raise ValueError("Derivative order must be a positive integer, got {}".format(order))
        order = int(order)
        return special.factorial(order, exact=True)*self.g_map.conj().T.dot(
            self.a_op.resolvent(z, order + 1)).dot(self.g_map)

    def _inverse_weyl(self, z):
        value = self.weyl_eval(z)
        singular_values = numpy.linalg.svd(value, compute_uv=False)
        if singular_values[-1] <= WEYL_SINGULAR_TOL*max(1.0, singular_values[0]):
            raise SingularWeyl("Weyl function is singular: smallest singular value {:.3e}".format(
                singular_values[-1]), point=z)
        return numpy.linalg.inv(value)

    def krein_residual(self, z):
        """
        Operator norm residual of the Krein formula
        (B - z)^-1 - (A - z)^-1 = -gamma(z) M(z)^-1 gamma(conj z)*

        Raises:
            SpectrumHit: z in the spectrum of A or B
            SingularWeyl: M(z) numerically singular

        """

        z = complex(z)
        correction = self.gamma(z).dot(self._inverse_weyl(z)).dot(
            self.gamma(z.conjugate()).conj().T)
        b_resolvent = self.b_op.resolvent(z)
        a_resolvent = self.a_op.resolvent(z)
        return numpy.linalg.norm(b_resolvent - a_resolvent + correction, 2)

    def krein_tolerance(self, z):
        """Scaled tolerance 1e-10 (1 + ||(A - z)^-1||^2 ||G||^2) for the Krein residual"""
        resolvent_norm = numpy.linalg.norm(self.a_op.resolvent(z), 2)
        return 1e-10*(1 + resolvent_norm**2*numpy.linalg.norm(self.g_map, 2)**2)

    def two_point_residual(self, z, z0):
        """Residual of M(z) - M(z0)* = (z - conj z0) gamma(z0)* gamma(z)"""
        left = self.weyl_eval(z) - self.weyl_eval(z0).conj().T
        right = (z - numpy.conj(z0))*self.gamma(z0).conj().T.dot(self.gamma(z))
        return numpy.linalg.norm(left - right, 2)

    def imaginary_part_residual(self, z):
        """Residual of Im M(z) = Im z gamma(z)* gamma(z)"""
        gamma = self.gamma(z)
        return numpy.linalg.norm(
            imaginary_part(self.weyl_eval(z)) - numpy.imag(z)*gamma.conj().T.dot(gamma), 2)

    def resolvent_trace_identity(self, z):
        """
        Both sides of tr((B - z)^-1 - (A - z)^-1) = -tr(M(z)^-1 M'(z))

        """

        left = numpy.trace(self.b_op.resolvent(z) - self.a_op.resolvent(z))
        right = -numpy.trace(self._inverse_weyl(z).dot(self.weyl_derivative(z, 1)))
        return left, right

    def weyl_evaluator(self):
        """The Weyl function as a NevanlinnaEvaluator, continued across gaps below A"""
        lowest = self.a_op.eigenvalues[0]
        return NevanlinnaEvaluator(self.d, self.weyl_eval, real_interval=(-numpy.inf, lowest),
                                   name="M")
