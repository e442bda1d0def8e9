"""
Logarithms of dissipative matrices and boundary values of Nevanlinna functions.

The logarithm uses the branch cut along the negative imaginary axis, so a scalar w gets
arg(w) in (-pi/2, 3pi/2). Its defining integral is

    log K = -i * integral_0^inf [(K + i*lam)^-1 - (1 + i*lam)^-1] dlam

and the eigendecomposition path below is its fast equivalent for diagonalisable K.

"""
import logging

import numpy
from scipy import integrate, interpolate, special

from spectral_shift.HermitianOperator import imaginary_part, real_part
from spectral_shift.NumericalErrors import BranchCutHit, ExtrapolationUnstable, \
    QuadratureFailure, SingularValue

DISSIPATIVE_TOL = 1e-10
BRANCH_TOL = 1e-10
SINGULAR_TOL = 1e-12
CLUSTER_TOL = 1e-8
CONDITION_LIMIT = 1e8
QUADRATURE_TOL = 1e-10
TAIL_CUTOFF_FACTOR = 1e4
TAIL_TERM_TOL = 1e-15
DIVERGENCE_FLOOR = 1e-9

log = logging.getLogger(__name__)


def scalar_log(w):
    """Elementwise logarithm with arg in (-pi/2, 3pi/2]"""
    w = numpy.asarray(w, dtype=complex)
    angle = numpy.angle(w)
    angle = numpy.where(angle <= -numpy.pi/2, angle + 2*numpy.pi, angle)
    return numpy.log(numpy.abs(w)) + 1j*angle


def _as_square(entries, label):
    matrix = numpy.array(entries, dtype=complex)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ValueError("{} must be a non-empty square matrix, got shape {}".format(
            label, matrix.shape))
    return matrix


class DissipativeMatrix(object):
    """
    A square matrix with positive semidefinite imaginary part, off the logarithm's branch cut

    Args:
        entries(array_like): Square complex matrix

    Raises:
        ValueError: Imaginary part not positive semidefinite
        BranchCutHit: An eigenvalue on the closed negative imaginary axis

    """

    def __init__(self, entries):

        self.entries = _as_square(entries, "Dissipative matrix")
        self.dim = self.entries.shape[0]

        scale = max(1.0, numpy.linalg.norm(self.entries, 2))
        lowest = numpy.min(numpy.linalg.eigvalsh(imaginary_part(self.entries)))
        if lowest < -DISSIPATIVE_TOL*scale:
            raise ValueError(
                "Matrix is not dissipative: imaginary part has eigenvalue {:.3e}".format(lowest))

        self.eigenvalues, self.eigenvectors = numpy.linalg.eig(self.entries)

        distance = numpy.min(self.cut_distance(self.eigenvalues))
        if distance < BRANCH_TOL:
            raise BranchCutHit(
                "Eigenvalue within {:.3e} of the negative imaginary axis".format(distance))

    @staticmethod
    def cut_distance(values):
        """Distance of each value to the closed negative imaginary axis {-i*lam : lam >= 0}"""
        values = numpy.asarray(values, dtype=complex)
        return numpy.where(values.imag <= 0, numpy.abs(values.real), numpy.abs(values))

    def is_well_conditioned(self):
        """
        Check whether the eigenvector basis can carry the logarithm

        Separated eigenvalues always qualify; clustered ones only with a well-conditioned
        eigenvector matrix

        """

        if self.dim == 1:
            return True
        gaps = numpy.abs(self.eigenvalues[:, None] - self.eigenvalues[None, :])
        gaps[numpy.diag_indices(self.dim)] = numpy.inf
        if numpy.min(gaps) >= CLUSTER_TOL:
            return True
        return numpy.linalg.cond(self.eigenvectors) <= CONDITION_LIMIT


def _eigen_log(eigenvalues, eigenvectors):
    return (eigenvectors * scalar_log(eigenvalues)).dot(numpy.linalg.inv(eigenvectors))


def _integral_log(entries):
    """
    Evaluate the defining integral on [0, cutoff] adaptively and add the 1/lam series tail

    """

    dim = entries.shape[0]
    identity = numpy.eye(dim, dtype=complex)
    scale = max(1.0, numpy.linalg.norm(entries, 2))
    cutoff = TAIL_CUTOFF_FACTOR*scale

    def integrand(lam):
        return numpy.linalg.solve(entries + 1j*lam*identity, identity) - identity/(1 + 1j*lam)

    breakpoints = [scale*10.0**k for k in range(4)]
    result, error, info = integrate.quad_vec(
        integrand, 0.0, cutoff, epsabs=QUADRATURE_TOL, epsrel=QUADRATURE_TOL,
        points=breakpoints, full_output=True)
    if not info.success:
        raise QuadratureFailure(
            "Logarithm integral did not converge: {} (error estimate {:.3e})".format(
                info.message, error))

    tail = numpy.zeros_like(identity)
    power = identity
    for n in range(1, 30):
        power = power.dot(entries)
        term = (-1)**n*(power - identity)*(1j)**(-(n + 1))/(n*cutoff**n)
        tail = tail + term
        if numpy.max(numpy.abs(term)) < TAIL_TERM_TOL:
            break

    return -1j*(result + tail)


def log_dissipative(matrix, method="eigen"):
    """
    Logarithm of a dissipative matrix

    Args:
        matrix(DissipativeMatrix or array_like): The matrix K
        method(str): "eigen" (falls back to quadrature for ill-conditioned clusters) or
            "quadrature"

    Returns:
        numpy.ndarray: log K

    Raises:
        BranchCutHit: An eigenvalue on the branch cut
        QuadratureFailure: The integral did not converge

    """

    if not isinstance(matrix, DissipativeMatrix):
        matrix = DissipativeMatrix(matrix)

    if method == "eigen":
        if matrix.is_well_conditioned():
            return _eigen_log(matrix.eigenvalues, matrix.eigenvectors)
        log.warning("Clustered eigenvalues %s, using the quadrature logarithm",
                    matrix.eigenvalues)
        return _integral_log(matrix.entries)
    elif method == "quadrature":
        return _integral_log(matrix.entries)

    raise ValueError("Unknown logarithm method {}".format(method))


def log_adjoint(matrix, method="quadrature"):
    """
    Logarithm of K* from its own defining integral

    This equals (log K)* only when K has no eigenvalue with negative real part; in general
    the difference is 2*pi*i times the adjoint of the Riesz projector onto those eigenvalues.

    Args:
        matrix(DissipativeMatrix or array_like): The dissipative matrix K
        method(str): "quadrature" or "eigen"

    Returns:
        numpy.ndarray: log(K*)

    Raises:
        BranchCutHit: i*lam is an eigenvalue of K for some lam >= 0

    """

    if not isinstance(matrix, DissipativeMatrix):
        matrix = DissipativeMatrix(matrix)

    adjoint = matrix.entries.conj().T
    distance = numpy.min(DissipativeMatrix.cut_distance(numpy.conj(matrix.eigenvalues)))
    if distance < BRANCH_TOL:
        raise BranchCutHit(
            "Eigenvalue within {:.3e} of the positive imaginary axis".format(distance))

    if method == "quadrature":
        return _integral_log(adjoint)
    elif method == "eigen":
        eigenvalues, eigenvectors = numpy.linalg.eig(adjoint)
        return _eigen_log(eigenvalues, eigenvectors)

    raise ValueError("Unknown logarithm method {}".format(method))


class NevanlinnaEvaluator(object):
    """
    A d x d matrix valued function, analytic off the real axis, with Im >= 0 on the upper
    half-plane

    Args:
        boundary_dim(int): Dimension d of the boundary space
        function(callable): z -> d x d matrix (scalars allowed when d == 1)
        real_interval(tuple): Optional open interval (low, high) of analytic continuation
        reflect(bool): Define lower half-plane values as N(conj(z))* instead of calling
            function there
        name(str): Label used in diagnostics

    """

    def __init__(self, boundary_dim, function, real_interval=None, reflect=False, name="N"):

        if int(boundary_dim) != boundary_dim or boundary_dim < 1:
            raise ValueError("Boundary dimension must be a positive integer, got {}".format(
                boundary_dim))
        if real_interval is not None and not real_interval[0] < real_interval[1]:
            raise ValueError("Real interval {} is empty".format(real_interval))

        self.boundary_dim = int(boundary_dim)
        self.function = function
        self.real_interval = real_interval
        self.reflect = reflect
        self.name = name

    def in_real_interval(self, lam):
        return self.real_interval is not None and \
            self.real_interval[0] < lam < self.real_interval[1]

    def _matrix(self, value):
        value = numpy.array(value, dtype=complex)
        if value.ndim == 0:
            value = value.reshape(1, 1)
        if value.shape != (self.boundary_dim, self.boundary_dim):
            raise ValueError("{} returned shape {}, expected {}".format(
                self.name, value.shape, (self.boundary_dim, self.boundary_dim)))
        return value

    def __call__(self, z):
        z = complex(z)
        if z.imag == 0 and not self.in_real_interval(z.real):
            raise ValueError("{} evaluated at real point {} outside its interval {}".format(
                self.name, z.real, self.real_interval))
        if z.imag < 0 and self.reflect:
            return self._matrix(self.function(z.conjugate())).conj().T
        return self._matrix(self.function(z))

    def conjugated(self, unitary):
        """Evaluator z -> U* N(z) U for a unitary U"""
        unitary = numpy.asarray(unitary, dtype=complex)
        return NevanlinnaEvaluator(
            self.boundary_dim, lambda z: unitary.conj().T.dot(self(z)).dot(unitary),
            self.real_interval, False, self.name + " (conjugated)")


def check_nevanlinna(evaluator, z_points):
    """
    Measure the Nevanlinna invariants of an evaluator on sample points

    Args:
        evaluator(NevanlinnaEvaluator): Function to check
        z_points(list): Points of the upper half-plane

    Returns:
        tuple: (lowest eigenvalue of Im N(z) over the points,
                largest reflection residual ||N(conj z) - N(z)*||)

    """

    lowest = numpy.inf
    reflection = 0.0
    for z in z_points:
        value = evaluator(z)
        lowest = min(lowest, numpy.min(numpy.linalg.eigvalsh(imaginary_part(value))))
        mirrored = evaluator(numpy.conj(z))
        reflection = max(reflection, numpy.linalg.norm(mirrored - value.conj().T, 2))
    return lowest, reflection


def log_nev(evaluator, z, method="eigen"):
    """
    Logarithm of a Nevanlinna function value

    Upper half-plane and real interval points use log_dissipative, lower half-plane points
    the reflection (log N(conj z))*.

    Raises:
        SingularValue: N(z) numerically singular

    """

    z = complex(z)
    if z.imag < 0:
        return log_nev(evaluator, z.conjugate(), method).conj().T

    value = evaluator(z)
    smallest = numpy.linalg.svd(value, compute_uv=False)[-1]
    if smallest <= SINGULAR_TOL:
        raise SingularValue("{} is singular: smallest singular value {:.3e}".format(
            evaluator.name, smallest), point=z)

    return log_dissipative(value, method)


def trace_im_log(evaluator, z, basis=None):
    """
    (1/pi) sum_i (Im log N(z) phi_i, phi_i) over the columns of basis, the trace by default

    """

    im_log = imaginary_part(log_nev(evaluator, z))
    if basis is not None:
        im_log = basis.conj().T.dot(im_log).dot(basis)
    return numpy.trace(im_log).real/numpy.pi


class EpsilonSchedule(object):
    """
    Distances from the real axis used to take boundary limits

    Args:
        values(list): Strictly decreasing positive epsilons
        extrapolation_order(int): 0 takes the last value, 1 and 2 extrapolate polynomially to
            epsilon = 0 through the last order + 1 values
        strict(bool): Raise ExtrapolationUnstable on divergent estimates instead of reporting
            the smallest-epsilon value

    """

    def __init__(self, values, extrapolation_order=1, strict=False):

        values = tuple(float(value) for value in values)
        if len(values) == 0:
            raise ValueError("Epsilon schedule needs at least one value")
        if min(values) <= 0:
            raise ValueError("Epsilon values must be positive, got {}".format(values))
        if any(later >= earlier for earlier, later in zip(values, values[1:])):
            raise ValueError("Epsilon values must be strictly decreasing, got {}".format(values))
        if extrapolation_order not in (0, 1, 2):
            raise ValueError("Extrapolation order must be 0, 1 or 2, got {}".format(
                extrapolation_order))
        if extrapolation_order >= len(values):
            raise ValueError("Extrapolation order {} needs at least {} epsilon values".format(
                extrapolation_order, extrapolation_order + 1))

        self.values = values
        self.extrapolation_order = extrapolation_order
        self.strict = strict

    @classmethod
    def geometric(cls, start=1e-3, ratio=0.1, count=3, extrapolation_order=1, strict=False):
        if not 0 < ratio < 1:
            raise ValueError("Epsilon ratio must lie in (0, 1), got {}".format(ratio))
        if int(count) != count or count < 1:
            raise ValueError("Epsilon count must be a positive integer, got {}".format(count))
        return cls([start*ratio**k for k in range(int(count))], extrapolation_order, strict)

    def with_strict(self, strict):
        return EpsilonSchedule(self.values, self.extrapolation_order, strict)

    def describe(self):
        return {"values": list(self.values),
                "extrapolation_order": self.extrapolation_order,
                "strict": self.strict}

    def diverges(self, estimates):
        """Check whether differences between successive estimates grow along the schedule"""
        differences = numpy.abs(numpy.diff(estimates))
        for earlier, later in zip(differences, differences[1:]):
            if later > earlier and later > DIVERGENCE_FLOOR:
                return True
        return False

    def extrapolate(self, estimates, point=None):
        """
        Combine per-epsilon estimates into the epsilon -> 0 limit

        Args:
            estimates(list): One real estimate per schedule value
            point(float): Spectral parameter, for diagnostics

        Raises:
            ExtrapolationUnstable: Estimates diverge and the schedule is strict

        """

        estimates = numpy.asarray(estimates, dtype=float)
        if self.extrapolation_order == 0:
            return float(estimates[-1])

        if self.diverges(estimates):
            if self.strict:
                raise ExtrapolationUnstable(
                    "Boundary estimates {} diverge as epsilon decreases".format(
                        list(estimates)), point=point)
            log.warning("Unstable extrapolation at %s, reporting smallest epsilon value", point)
            return float(estimates[-1])

        used = self.extrapolation_order + 1
        polynomial = interpolate.BarycentricInterpolator(self.values[-used:], estimates[-used:])
        return float(polynomial(0.0))


DEFAULT_SCHEDULE = EpsilonSchedule.geometric()


def boundary_limit(function, lam, schedule=DEFAULT_SCHEDULE):
    """
    Limit of a real function of z as z = lam + i*eps approaches the real axis

    Args:
        function(callable): complex z -> float
        lam(float): Real point
        schedule(EpsilonSchedule): Epsilons and extrapolation rule

    """

    estimates = [function(complex(lam, eps)) for eps in schedule.values]
    return schedule.extrapolate(estimates, point=lam)


class DensityReport(object):
    """
    Trace of the representing density of log N on a grid, with the constant Re log N(i)

    """

    def __init__(self, lambda_grid, density_trace, constant_c):

        self.lambda_grid = numpy.asarray(lambda_grid, dtype=float)
        self.density_trace = numpy.asarray(density_trace, dtype=float)
        self.constant_c = constant_c

    def within_bounds(self, tolerance=1e-8):
        dim = self.constant_c.shape[0]
        return bool(numpy.all(self.density_trace >= -tolerance) and
                    numpy.all(self.density_trace <= dim*(1 + tolerance)))


def xi_density(evaluator, grid, schedule=DEFAULT_SCHEDULE, strict=None):
    """
    Boundary values (1/pi) tr Im log N(lam + i0) on a grid, plus C = Re log N(i)

    Args:
        evaluator(NevanlinnaEvaluator): The function N
        grid(list): Real points
        schedule(EpsilonSchedule): Boundary limit rule
        strict(bool): Override the schedule's strict flag, None keeps it

    Returns:
        DensityReport: The density trace and constant

    """

    if strict is not None:
        schedule = schedule.with_strict(strict)
    density = [boundary_limit(lambda z: trace_im_log(evaluator, z), lam, schedule)
               for lam in grid]
    return DensityReport(grid, density, real_part(log_nev(evaluator, 1j)))


def integral_representation_residual(evaluator, report, z):
    """
    Compare tr log N(z) with tr C + integral (1/(lam - z) - lam/(1 + lam^2)) tr Xi(lam) dlam

    The density is interpolated linearly between grid points and integrated exactly, so the
    grid must cover the support of the density.

    Returns:
        float: Absolute residual

    """

    z = complex(z)
    lam = report.lambda_grid
    rho = report.density_trace
    start, stop = lam[:-1], lam[1:]
    slope = numpy.diff(rho)/numpy.diff(lam)
    offset = rho[:-1] - slope*start

    cauchy = slope*(stop - start) + (offset + slope*z)*(
        numpy.log(stop - z) - numpy.log(start - z))
    regulariser = offset*0.5*(numpy.log1p(stop**2) - numpy.log1p(start**2)) + \
        slope*((stop - start) - (numpy.arctan(stop) - numpy.arctan(start)))

    represented = numpy.trace(report.constant_c) + numpy.sum(cauchy - regulariser)
    return abs(numpy.trace(log_nev(evaluator, z)) - represented)


def _central_difference(function, z, order, step):
    if order == 0:
        return function(z)
    total = 0
    for j in range(order + 1):
        total = total + (-1)**j*special.comb(order, j, exact=True)*function(
            z + (order/2.0 - j)*step)
    return total/step**order


def log_derivative_trace_check(evaluator, z, order, step=1e-3):
    """
    Both sides of tr d^(l-1)/dz^(l-1) (N^-1 N') = tr d^l/dz^l log N by central differences

    Args:
        evaluator(NevanlinnaEvaluator): The function N
        z(complex): Evaluation point off the real axis or in the real interval
        order(int): Derivative order l >= 1
        step(float): Finite difference step h

    Returns:
        tuple: (left side, right side)

    """

    if int(order) != order or order < 1:
        raise ValueError("Derivative order must be a positive integer, got {}".format(order))
    z = complex(z)

    def log_derivative(zeta):
        derivative = (evaluator(zeta + step) - evaluator(zeta - step))/(2*step)
        return numpy.trace(numpy.linalg.solve(evaluator(zeta), derivative))

    def trace_log(zeta):
        return numpy.trace(log_nev(evaluator, zeta))

    return (_central_difference(log_derivative, z, int(order) - 1, step),
            _central_difference(trace_log, z, int(order), step))
