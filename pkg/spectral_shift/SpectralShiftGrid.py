"""
Spectral shift functions on real grids, the counting oracle and the trace formula check.

A spectral shift function xi of a pair {A, B} satisfies, for odd m,

    tr((B - z)^-m - (A - z)^-m) = -m * integral xi(lam) (lam - z)^(-m-1) dlam

and for finite Hermitian pairs xi(lam) = N(lam, A) - N(lam, B).

"""
import csv
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy
from scipy import integrate

from spectral_shift.HermitianOperator import random_unitary
from spectral_shift.NevanlinnaLogarithm import DEFAULT_SCHEDULE, boundary_limit, trace_im_log
from spectral_shift.NumericalErrors import GridMismatch, TailTooFat

JUMP_THRESHOLD = 0.5
REFINE_MIN_STEP = 1e-4
RELATIVE_FLOOR = 1e-3
CSV_DIGITS = 12

log = logging.getLogger(__name__)


class SsfGrid(object):
    """
    Spectral shift function values on a strictly increasing real grid

    Args:
        lambdas(array_like): Grid points
        xi(array_like): Values, one per grid point
        eps_schedule(EpsilonSchedule): Boundary limit rule used to compute the values
        power(int): Odd trace formula power m = 2k + 1
        basis_seed(int): Seed of the orthonormal basis used for the trace, None for the
            standard basis
        xi_oracle(array_like): Optional independent values for comparison

    """

    def __init__(self, lambdas, xi, eps_schedule=DEFAULT_SCHEDULE, power=1, basis_seed=None,
                 xi_oracle=None):

        lambdas = numpy.asarray(lambdas, dtype=float)
        xi = numpy.asarray(xi, dtype=float)
        if lambdas.ndim != 1 or lambdas.shape != xi.shape:
            raise ValueError("Grid and values must be vectors of equal length, got {} and {}".format(
                lambdas.shape, xi.shape))
        if numpy.any(numpy.diff(lambdas) <= 0):
            raise ValueError("Grid must be strictly increasing")
        if int(power) != power or power < 1 or power % 2 == 0:
            raise ValueError("Power must be an odd positive integer, got {}".format(power))
        if xi_oracle is not None:
            xi_oracle = numpy.asarray(xi_oracle, dtype=float)
            if xi_oracle.shape != xi.shape:
                raise ValueError("Oracle column has shape {}, expected {}".format(
                    xi_oracle.shape, xi.shape))

        self.lambdas = lambdas
        self.xi = xi
        self.eps_schedule = eps_schedule
        self.power = int(power)
        self.basis_seed = basis_seed
        self.xi_oracle = xi_oracle

    def __len__(self):
        return len(self.lambdas)

    def with_oracle(self, xi_oracle):
        return SsfGrid(self.lambdas, self.xi, self.eps_schedule, self.power, self.basis_seed,
                       xi_oracle)

    def with_values(self, lambdas, xi):
        return SsfGrid(lambdas, xi, self.eps_schedule, self.power, self.basis_seed)

    def abs_error(self):
        if self.xi_oracle is None:
            return None
        return numpy.abs(self.xi - self.xi_oracle)

    def columns(self):
        """Column names and value vectors in output order"""
        names = ["lambda", "xi"]
        values = [self.lambdas, self.xi]
        if self.xi_oracle is not None:
            names += ["xi_oracle", "abs_err"]
            values += [self.xi_oracle, self.abs_error()]
        return names, values

    def write_csv(self, stream):
        """Write the grid as CSV with a header row and 12 significant digits"""
        names, values = self.columns()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(names)
        for row in zip(*values):
            writer.writerow(["{:.{}g}".format(value, CSV_DIGITS) for value in row])

    @classmethod
    def read_csv(cls, stream, eps_schedule=DEFAULT_SCHEDULE, power=1):
        reader = csv.reader(stream)
        names = next(reader)
        if names[:2] != ["lambda", "xi"]:
            raise ValueError("CSV header must start with lambda,xi, got {}".format(names))
        rows = numpy.array([[float(value) for value in row] for row in reader if row])
        oracle = rows[:, 2] if "xi_oracle" in names else None
        return cls(rows[:, 0], rows[:, 1], eps_schedule, power, xi_oracle=oracle)

    def as_json(self, metadata):
        names, values = self.columns()
        return {"metadata": metadata,
                "columns": names,
                "rows": [[float(value) for value in row] for row in zip(*values)]}


class TraceFormulaEntry(object):

    def __init__(self, z, lhs, rhs, tail):

        self.z = complex(z)
        self.lhs = complex(lhs)
        self.rhs = complex(rhs)
        self.tail = tail
        self.residual = abs(self.lhs - self.rhs)

    @property
    def relative_residual(self):
        return self.residual/max(abs(self.lhs), RELATIVE_FLOOR)


class TraceFormulaReport(object):
    """
    Collected trace formula comparisons

    """

    def __init__(self):

        self.entries = []

    def add(self, entry):
        self.entries.append(entry)
        return entry

    @property
    def z_points(self):
        return numpy.array([entry.z for entry in self.entries])

    @property
    def lhs(self):
        return numpy.array([entry.lhs for entry in self.entries])

    @property
    def rhs(self):
        return numpy.array([entry.rhs for entry in self.entries])

    @property
    def residual(self):
        return numpy.array([entry.residual for entry in self.entries])

    def max_relative_residual(self):
        if not self.entries:
            return 0.0
        return max(entry.relative_residual for entry in self.entries)


def evaluate_grid(function, grid, schedule=DEFAULT_SCHEDULE, workers=1):
    """
    Boundary limits of a real function of z at every grid point, in grid order

    Args:
        function(callable): complex z -> float, whose limit z -> lam + i0 is wanted
        grid(list): Real points
        schedule(EpsilonSchedule): Boundary limit rule
        workers(int): Size of the thread pool, 1 evaluates inline

    """

    def point(lam):
        return boundary_limit(function, lam, schedule)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return numpy.array(list(pool.map(point, grid)))
    return numpy.array([point(lam) for lam in grid])


def basis_for_seed(dim, basis_seed):
    if basis_seed is None:
        return None
    return random_unitary(dim, numpy.random.default_rng(basis_seed))


def ssf_boundary_limit(evaluator, grid, schedule=DEFAULT_SCHEDULE, power=1, basis_seed=None,
                       workers=1, strict=None):
    """
    Spectral shift function (1/pi) tr Im log M(lam + i0) of a Weyl function M

    Args:
        evaluator(NevanlinnaEvaluator): The Weyl function
        grid(list): Real points
        schedule(EpsilonSchedule): Boundary limit rule
        power(int): Odd trace formula power recorded in the result
        basis_seed(int): Seed for a random orthonormal basis, None for the standard one
        workers(int): Thread pool size
        strict(bool): Override the schedule's strict flag, None keeps it

    Returns:
        SsfGrid: The values on the grid

    """

    if strict is not None:
        schedule = schedule.with_strict(strict)
    basis = basis_for_seed(evaluator.boundary_dim, basis_seed)
    values = evaluate_grid(lambda z: trace_im_log(evaluator, z, basis), grid, schedule, workers)
    return SsfGrid(grid, values, schedule, power, basis_seed)


def ssf_counting_oracle(a_op, b_op, lam):
    """N(lam, A) - N(lam, B), the spectral shift function of a finite Hermitian pair"""
    return a_op.counting_function(lam) - b_op.counting_function(lam)


def counting_oracle_values(a_op, b_op, grid):
    return numpy.array([ssf_counting_oracle(a_op, b_op, lam) for lam in grid], dtype=float)


def ssf_difference(xi_b, xi_a):
    """
    Pointwise difference xi_b - xi_a of two grids computed against a common comparison
    operator

    Raises:
        GridMismatch: Grids or powers differ

    """

    if not numpy.array_equal(xi_b.lambdas, xi_a.lambdas):
        raise GridMismatch("Spectral shift grids differ")
    if xi_b.power != xi_a.power:
        raise GridMismatch("Spectral shift powers differ: {} and {}".format(
            xi_b.power, xi_a.power))
    return SsfGrid(xi_b.lambdas, xi_b.xi - xi_a.xi, xi_b.eps_schedule, xi_b.power,
                   xi_b.basis_seed)


def refine_jumps(function, grid, threshold=JUMP_THRESHOLD, min_step=REFINE_MIN_STEP):
    """
    Bisect every grid step across which xi changes by more than threshold

    Args:
        function(callable): complex z -> float whose boundary limit is xi
        grid(SsfGrid): Coarse grid
        threshold(float): Jump size that triggers refinement
        min_step(float): Refinement stops once a step is at most this wide

    Returns:
        SsfGrid: Grid with the inserted points

    """

    schedule = grid.eps_schedule

    def bisect(low, low_value, high, high_value):
        if abs(high_value - low_value) <= threshold or high - low <= min_step:
            return []
        middle = 0.5*(low + high)
        middle_value = boundary_limit(function, middle, schedule)
        return bisect(low, low_value, middle, middle_value) + [(middle, middle_value)] + \
            bisect(middle, middle_value, high, high_value)

    points = [(grid.lambdas[0], grid.xi[0])]
    for k in range(len(grid) - 1):
        points += bisect(grid.lambdas[k], grid.xi[k], grid.lambdas[k + 1], grid.xi[k + 1])
        points.append((grid.lambdas[k + 1], grid.xi[k + 1]))

    log.debug("Jump refinement added %d points", len(points) - len(grid))
    lambdas, values = zip(*points)
    return grid.with_values(lambdas, values)


def jump_locations(grid):
    """
    Locate jumps between integer plateaus of xi

    Returns:
        list: (location, size) with location where the linear interpolant crosses the
        midpoint between the two plateaus

    """

    jumps = []
    plateaus = numpy.round(grid.xi)
    for k in range(len(grid) - 1):
        if plateaus[k] == plateaus[k + 1]:
            continue
        target = 0.5*(plateaus[k] + plateaus[k + 1])
        fraction = (target - grid.xi[k])/(grid.xi[k + 1] - grid.xi[k])
        location = grid.lambdas[k] + fraction*(grid.lambdas[k + 1] - grid.lambdas[k])
        jumps.append((location, int(plateaus[k + 1] - plateaus[k])))
    return jumps


def _tail_kernel_integral(start, stop, z, power):
    value, _ = integrate.quad(
        lambda lam: ((lam - z.real)**2 + z.imag**2)**(-(power + 1)/2.0), start, stop)
    return value


def trace_formula_rhs(grid, z):
    """
    -m * integral xi(lam) (lam - z)^(-m-1) dlam for the piecewise linear interpolant of xi,
    integrated exactly on each grid step

    Returns:
        tuple: (value, tail estimate assuming xi keeps its edge values beyond the grid)

    """

    z = complex(z)
    power = grid.power
    start, stop = grid.lambdas[:-1], grid.lambdas[1:]
    slope = numpy.diff(grid.xi)/numpy.diff(grid.lambdas)
    constant = grid.xi[:-1] + slope*(z - start)
    w_start, w_stop = start - z, stop - z

    pole_part = constant*(w_start**(-power) - w_stop**(-power))/power
    if power == 1:
        linear_part = slope*(numpy.log(w_stop) - numpy.log(w_start))
    else:
        linear_part = slope*(w_stop**(1 - power) - w_start**(1 - power))/(1 - power)
    value = -power*numpy.sum(pole_part + linear_part)

    tail = 0.0
    if grid.xi[0] != 0:
        tail += abs(grid.xi[0])*_tail_kernel_integral(-numpy.inf, grid.lambdas[0], z, power)
    if grid.xi[-1] != 0:
        tail += abs(grid.xi[-1])*_tail_kernel_integral(grid.lambdas[-1], numpy.inf, z, power)

    return value, power*tail


def trace_formula_entry(lhs, grid, z, tail_bound):
    """
    Compare a known resolvent trace difference with the integral of xi

    Raises:
        TailTooFat: The omitted tail may exceed tail_bound

    """

    rhs, tail = trace_formula_rhs(grid, z)
    if tail > tail_bound:
        raise TailTooFat("Omitted tail estimate {:.3e} exceeds bound {:.3e}".format(
            tail, tail_bound), point=z)
    return TraceFormulaEntry(z, lhs, rhs, tail)


def trace_formula_residual(pair, grid, z, tail_bound):
    """
    Trace formula comparison for a perturbation pair at power grid.power

    Args:
        pair(PerturbationPair): The pair {A, B}
        grid(SsfGrid): Its spectral shift function
        z(complex): Point off the spectra
        tail_bound(float): Largest acceptable tail estimate

    Returns:
        TraceFormulaEntry: lhs, rhs and residual

    """

    lhs = numpy.trace(pair.b_op.resolvent(z, grid.power) - pair.a_op.resolvent(z, grid.power))
    return trace_formula_entry(lhs, grid, z, tail_bound)
