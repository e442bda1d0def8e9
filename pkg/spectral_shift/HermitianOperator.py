import numpy
from scipy import stats

from spectral_shift.NumericalErrors import SpectrumHit

HERMITIAN_TOL = 1e-12
SPECTRUM_TOL = 1e-12
EIGEN_TOL = 1e-10


def real_part(matrix):
    """Hermitian part (X + X*)/2 of a square matrix"""
    matrix = numpy.asarray(matrix)
    return (matrix + matrix.conj().T) / 2


def imaginary_part(matrix):
    """Hermitian imaginary part (X - X*)/(2i) of a square matrix"""
    matrix = numpy.asarray(matrix)
    return (matrix - matrix.conj().T) / 2j


def random_unitary(dim, rng):
    """
    Draw a Haar distributed unitary matrix

    Args:
        dim(int): Matrix dimension
        rng(numpy.random.Generator): Source of randomness

    Returns:
        numpy.ndarray: dim x dim unitary matrix

    """

    if dim == 1:
        return numpy.array([[numpy.exp(2j*numpy.pi*rng.uniform())]])
    return stats.unitary_group.rvs(dim, random_state=rng)


class SpectralData(object):
    """
    Eigen-decomposition of a Hermitian matrix, eigenvalues ascending

    """

    def __init__(self, eigenvalues, eigenvectors):

        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    def reconstruct(self):
        return (self.eigenvectors * self.eigenvalues).dot(self.eigenvectors.conj().T)

    def projector(self, mask):
        """
        Orthogonal projector onto the span of the selected eigenvectors

        Args:
            mask(numpy.ndarray): Boolean selection over the eigenvalues

        """

        columns = self.eigenvectors[:, mask]
        return columns.dot(columns.conj().T)


class HermitianOperator(object):
    """
    A finite Hermitian matrix standing in for a self-adjoint operator

    Args:
        entries(array_like): Square complex matrix, Hermitian to within HERMITIAN_TOL

    Raises:
        ValueError: Entries not square or not Hermitian

    """

    def __init__(self, entries):

        entries = numpy.array(entries, dtype=complex)
        if entries.ndim == 0:
            entries = entries.reshape(1, 1)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(
                "Operator entries must form a non-empty square matrix, got shape {}".format(
                    entries.shape))

        asymmetry = numpy.max(numpy.abs(entries - entries.conj().T))
        if asymmetry > HERMITIAN_TOL:
            raise ValueError(
                "Operator entries are not Hermitian: asymmetry {:.3e} exceeds {:.0e}".format(
                    asymmetry, HERMITIAN_TOL))

        self.entries = real_part(entries)
        self.entries.flags.writeable = False
        self.dim = self.entries.shape[0]
        self._spectral_data = None

    @classmethod
    def diagonal(cls, values):
        return cls(numpy.diag(numpy.asarray(values, dtype=float)))

    @classmethod
    def random(cls, dim, rng, low=-3.0, high=3.0):
        """
        Hermitian operator with uniform spectrum in [low, high] and Haar random eigenbasis

        Args:
            dim(int): Dimension
            rng(numpy.random.Generator): Source of randomness
            low(float): Lower spectral bound
            high(float): Upper spectral bound

        """

        unitary = random_unitary(dim, rng)
        eigenvalues = rng.uniform(low, high, dim)
        return cls(real_part((unitary * eigenvalues).dot(unitary.conj().T)))

    @property
    def spectral_data(self):
        if self._spectral_data is None:
            eigenvalues, eigenvectors = numpy.linalg.eigh(self.entries)
            self._spectral_data = SpectralData(eigenvalues, eigenvectors)
        return self._spectral_data

    @property
    def eigenvalues(self):
        return self.spectral_data.eigenvalues

    def norm(self):
        return numpy.max(numpy.abs(self.eigenvalues))

    def distance_to_spectrum(self, z):
        return numpy.min(numpy.abs(self.eigenvalues - z))

    def resolvent(self, z, power=1):
        """
        Resolvent power (H - zI)^-power

        Args:
            z(complex): Spectral parameter
            power(int): Positive integer exponent

        Returns:
            numpy.ndarray: dim x dim complex matrix

        Raises:
            SpectrumHit: z within SPECTRUM_TOL of an eigenvalue

        """

        if int(power) != power or power < 1:
            raise ValueError("Resolvent power must be a positive integer, got {}".format(power))

        distance = self.distance_to_spectrum(z)
        if distance <= SPECTRUM_TOL:
            raise SpectrumHit(
                "Spectral parameter is {:.3e} from the spectrum".format(distance), point=z)

        identity = numpy.eye(self.dim, dtype=complex)
        inverse = numpy.linalg.solve(self.entries - z*identity, identity)
        if power == 1:
            return inverse
        return numpy.linalg.matrix_power(inverse, int(power))

    def counting_function(self, lam):
        """Number of eigenvalues strictly below lam, multiplicities counted"""
        return int(numpy.count_nonzero(self.eigenvalues < lam))

    def spectral_projector_negative(self):
        """
        Orthogonal projector onto the negative spectral subspace

        Raises:
            SpectrumHit: 0 is numerically an eigenvalue

        """

        eigenvalues = self.eigenvalues
        if numpy.min(numpy.abs(eigenvalues)) <= SPECTRUM_TOL:
            raise SpectrumHit("0 is an eigenvalue, negative projector undefined", point=0.0)

        return self.spectral_data.projector(eigenvalues < 0)
