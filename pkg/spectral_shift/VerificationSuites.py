"""
Verification suites run against a perturbation pair.

Each suite measures one property of the pair or of its spectral shift function and reports
pass, fail or skipped with the largest residual found.

"""
import logging

import numpy

from spectral_shift.HermitianOperator import imaginary_part, random_unitary
from spectral_shift.NevanlinnaLogarithm import DEFAULT_SCHEDULE, check_nevanlinna, log_nev
from spectral_shift.NumericalErrors import SpectralShiftError
from spectral_shift.SpectralGridGenerator import SpectralGridGenerator
from spectral_shift.SpectralShiftGrid import SsfGrid, counting_oracle_values, \
    ssf_boundary_limit, trace_formula_residual

SUITES = ("krein_residual", "nevanlinna", "im_log_bound", "basis_invariance",
          "oracle_equivalence", "trace_formula", "nonnegativity")

NEVANLINNA_TOL = 1e-10
IM_LOG_TOL = 1e-10
BASIS_TOL = 1e-10
ORACLE_TOL = 1e-2
ORACLE_DISTANCE = 0.05
TRACE_TOL = 1e-3
TRACE_TAIL_BOUND = 1e-4
TRACE_STEP = 0.05
TRACE_WINDOW_RATIO = 30
SIGN_TOL = 1e-6
SAMPLE_COUNT = 50
BASIS_SEEDS = (1, 2, 3)
TRACE_POWERS = (1, 3)
TRACE_POINTS = (1j, 2j, -1 + 1j)
PASS = "pass"
FAIL = "fail"
SKIPPED_SIGN = "skipped (sign condition not asserted)"

log = logging.getLogger(__name__)


class SuiteResult(object):
    """
    Outcome of one suite

    Args:
        name(str): Suite name
        status(str): "pass", "fail" or "skipped (<reason>)"
        max_residual(float): Largest residual measured, None if nothing was measured
        tolerance(float): Tolerance the residual was held to
        detail(str): Human readable summary

    """

    def __init__(self, name, status, max_residual=None, tolerance=None, detail=""):

        self.name = name
        self.status = status
        self.max_residual = max_residual
        self.tolerance = tolerance
        self.detail = detail

    @classmethod
    def measured(cls, name, max_residual, tolerance, detail=""):
        status = PASS if max_residual <= tolerance else FAIL
        return cls(name, status, float(max_residual), float(tolerance), detail)

    @property
    def failed(self):
        return self.status == FAIL

    def as_dict(self):
        return {"status": self.status,
                "max_residual": self.max_residual,
                "tolerance": self.tolerance,
                "detail": self.detail}


class VerificationReport(object):

    def __init__(self, results):

        self.results = list(results)

    @property
    def passed(self):
        return not any(result.failed for result in self.results)

    def __getitem__(self, name):
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def as_dict(self):
        report = {"overall": PASS if self.passed else FAIL}
        for result in self.results:
            report[result.name] = result.as_dict()
        return report


class PairVerifier(object):
    """
    Run the verification suites for a perturbation pair

    Args:
        pair(PerturbationPair): The pair {A, B}
        grid(array_like): Real grid for the spectral shift function suites
        schedule(EpsilonSchedule): Boundary limit rule
        basis_seed(int): Basis seed used for the spectral shift function
        workers(int): Thread pool size for grid evaluation
        sample_seed(int): Seed of the upper half-plane sample points

    """

    def __init__(self, pair, grid, schedule=DEFAULT_SCHEDULE, basis_seed=None, workers=1,
                 sample_seed=0):

        self.pair = pair
        self.grid = numpy.asarray(grid, dtype=float)
        self.schedule = schedule
        self.basis_seed = basis_seed
        self.workers = workers

        low, high = pair.spectral_bounds()
        self.low, self.high = low, high
        self.spectrum = numpy.concatenate([pair.a_op.eigenvalues, pair.b_op.eigenvalues])
        self.offset = int(numpy.count_nonzero(pair.t_coupling.eigenvalues < 0))

        rng = numpy.random.default_rng(sample_seed)
        samples = SpectralGridGenerator.upper_half_plane_samples(
            SAMPLE_COUNT, rng, real_range=(low - 1.0, high + 1.0), imag_range=(0.05, 1.0))
        ordered = numpy.unique(self.spectrum)
        midpoints = 0.5*(ordered[:-1] + ordered[1:]) + 0.1j
        self.samples = numpy.concatenate([samples, midpoints, [1j]])

        self._xi = None

    def xi(self):
        """Spectral shift function on the suite grid, computed once"""
        if self._xi is None:
            self._xi = ssf_boundary_limit(self.pair.weyl_evaluator(), self.grid, self.schedule,
                                          basis_seed=self.basis_seed, workers=self.workers)
        return self._xi

    def away_from_spectrum(self):
        return SpectralGridGenerator.away_from(self.grid, self.spectrum, ORACLE_DISTANCE)

    def _real_points(self):
        ordered = numpy.unique(self.spectrum)
        gaps = [0.5*(left + right) for left, right in zip(ordered[:-1], ordered[1:])
                if right - left > 0.1]
        return [self.low - 1.0, self.high + 1.0] + gaps

    def krein_residual(self):
        worst_ratio, worst = -1.0, (0.0, 0.0)
        points = list(self.samples) + list(numpy.conj(self.samples)) + self._real_points()
        for z in points:
            residual = self.pair.krein_residual(z)
            tolerance = self.pair.krein_tolerance(z)
            if residual/tolerance > worst_ratio:
                worst_ratio, worst = residual/tolerance, (residual, tolerance)

        return SuiteResult.measured("krein_residual", worst[0], worst[1],
                                    "{} points, worst residual/tolerance {:.3e}".format(
                                        len(points), worst_ratio))

    def nevanlinna(self):
        lowest, reflection = check_nevanlinna(self.pair.weyl_evaluator(), self.samples)
        return SuiteResult.measured(
            "nevanlinna", max(-lowest, reflection, 0.0), NEVANLINNA_TOL,
            "lowest eigenvalue of Im M {:.3e}, reflection residual {:.3e}".format(
                lowest, reflection))

    def im_log_bound(self):
        evaluator = self.pair.weyl_evaluator()
        violation = 0.0
        for z in self.samples:
            eigenvalues = numpy.linalg.eigvalsh(imaginary_part(log_nev(evaluator, z)))
            violation = max(violation, -eigenvalues[0], eigenvalues[-1] - numpy.pi)
        return SuiteResult.measured("im_log_bound", violation, IM_LOG_TOL,
                                    "largest excursion of Im log M outside [0, pi]")

    def basis_invariance(self):
        mask = self.away_from_spectrum()
        if not numpy.any(mask):
            return SuiteResult("basis_invariance", "skipped (no grid point away from spectra)")
        reference = self.xi().xi[mask]
        evaluator = self.pair.weyl_evaluator()
        difference = 0.0
        for seed in BASIS_SEEDS:
            unitary = random_unitary(self.pair.d, numpy.random.default_rng(seed))
            conjugated = ssf_boundary_limit(evaluator.conjugated(unitary), self.grid[mask],
                                            self.schedule, workers=self.workers)
            difference = max(difference, numpy.max(numpy.abs(conjugated.xi - reference)))
        return SuiteResult.measured("basis_invariance", difference, BASIS_TOL,
                                    "{} unitary conjugations of M".format(len(BASIS_SEEDS)))

    def oracle_equivalence(self):
        mask = self.away_from_spectrum()
        if not numpy.any(mask):
            return SuiteResult("oracle_equivalence", "skipped (no grid point away from spectra)")
        oracle = counting_oracle_values(self.pair.a_op, self.pair.b_op, self.grid) + self.offset
        error = numpy.max(numpy.abs(self.xi().xi - oracle)[mask])
        detail = "{} points at least {} from the spectra".format(
            int(numpy.count_nonzero(mask)), ORACLE_DISTANCE)
        if self.offset:
            detail += ", oracle offset by {} negative coupling eigenvalues".format(self.offset)
        return SuiteResult.measured("oracle_equivalence", error, ORACLE_TOL, detail)

    def trace_grid(self):
        """
        Grid over the spectra with a mirrored window around every eigenvalue, with the constant
        offset of an indefinite coupling removed

        Window edges sit at TRACE_WINDOW_RATIO times the smallest epsilon, where the smeared
        jump has settled.

        """

        num = int(numpy.ceil((self.high - self.low + 2.0)/TRACE_STEP)) + 1
        lambdas = SpectralGridGenerator.linear_grid(self.low - 1.0, self.high + 1.0, num)
        width = TRACE_WINDOW_RATIO*min(self.schedule.values)
        lambdas = SpectralGridGenerator.with_jump_windows(lambdas, self.spectrum, width)

        grid = ssf_boundary_limit(self.pair.weyl_evaluator(), lambdas, self.schedule,
                                  workers=self.workers)
        return SsfGrid(grid.lambdas, grid.xi - self.offset, self.schedule)

    def trace_formula(self):
        base = self.trace_grid()
        worst = 0.0
        for power in TRACE_POWERS:
            grid = SsfGrid(base.lambdas, base.xi, self.schedule, power)
            for z in TRACE_POINTS:
                entry = trace_formula_residual(self.pair, grid, z, TRACE_TAIL_BOUND)
                log.debug("Trace formula m = %d, z = %s: lhs %s, rhs %s", power, z, entry.lhs,
                          entry.rhs)
                worst = max(worst, entry.relative_residual)
        return SuiteResult.measured("trace_formula", worst, TRACE_TOL,
                                    "relative residual for m in {} and z in {}".format(
                                        list(TRACE_POWERS), [str(z) for z in TRACE_POINTS]))

    def nonnegativity(self):
        if not self.pair.is_sign_definite():
            return SuiteResult("nonnegativity", SKIPPED_SIGN)

        xi = self.xi().xi
        below = self.grid < self.low - 0.1
        violation = max(0.0, -numpy.min(xi))
        if numpy.any(below):
            violation = max(violation, numpy.max(numpy.abs(xi[below])))
        return SuiteResult.measured("nonnegativity", violation, SIGN_TOL,
                                    "xi >= 0 everywhere and xi = 0 below the spectra")

    def run(self, names=SUITES):
        """
        Run the named suites in order

        Returns:
            VerificationReport: One result per suite

        """

        results = []
        for name in names:
            try:
                result = getattr(self, name)()
            except (SpectralShiftError, ValueError) as error:
                result = SuiteResult(name, FAIL, detail="{}: {}".format(
                    type(error).__name__, error))
            log.info("Suite %s: %s", name, result.status)
            results.append(result)
        return VerificationReport(results)
