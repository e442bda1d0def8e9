"""
A point interaction of strength alpha at the origin of the line.

H_alpha is -u'' on R \\ {0} with u continuous and u'(0+) - u'(0-) = -alpha u(0), so alpha < 0
is repulsive here and alpha > 0 binds one state.

"""
import numpy

from spectral_shift.NevanlinnaLogarithm import DEFAULT_SCHEDULE, NevanlinnaEvaluator, \
    trace_im_log
from spectral_shift.NumericalErrors import BranchViolation, SignPathMismatch
from spectral_shift.SpectralShiftGrid import SsfGrid, evaluate_grid

PATHS = ("direct", "comparison")


def upper_sqrt(z):
    """Square root with non-negative imaginary part"""
    root = numpy.sqrt(complex(z))
    if root.imag < 0:
        return -root
    return root


def dtn_delta(z):
    """
    E(z) = i/(2 sqrt z), the inverse of the sum of the two one-sided DtN maps at the origin

    Raises:
        BranchViolation: z on [0, inf)

    """

    z = complex(z)
    if z.imag == 0 and z.real >= 0:
        raise BranchViolation("Boundary map undefined on [0, inf)", point=z)
    return 1j/(2*upper_sqrt(z))


def dtn_delta_derivative(z):
    return -1j/(4*upper_sqrt(z)**3)


class DeltaPointModel(object):
    """
    Args:
        alpha(float): Non-zero interaction strength
        comparison_c(float): Optional comparison strength above alpha

    Raises:
        ValueError: alpha zero or comparison_c not above alpha

    """

    def __init__(self, alpha, comparison_c=None):

        if alpha == 0:
            raise ValueError("Interaction strength alpha must be non-zero")
        if comparison_c is not None and not comparison_c > alpha:
            raise ValueError("Comparison strength c = {} must exceed alpha = {}".format(
                comparison_c, alpha))
        if comparison_c == 0:
            raise ValueError("Comparison strength c must be non-zero")

        self.alpha = float(alpha)
        self.comparison_c = None if comparison_c is None else float(comparison_c)

    def boundary_function(self, z):
        """E(z) - 1/alpha"""
        return dtn_delta(z) - 1.0/self.alpha

    def weyl(self, strength, z):
        """
        M_s(z) = (c - s)^-1 (s E(z) - 1)(c E(z) - 1)^-1 relative to the comparison strength;
        s = 0 gives -1/(c (c E(z) - 1))

        """

        c = self.comparison_c
        if c is None:
            raise ValueError("Comparison strength c is not set")
        boundary = dtn_delta(z)
        return (strength*boundary - 1)/((c - strength)*(c*boundary - 1))

    def evaluators(self):
        """Nevanlinna evaluators used by the model, keyed by name"""
        evaluators = {"E": NevanlinnaEvaluator(1, dtn_delta, name="E")}
        if self.alpha < 0:
            evaluators["E - 1/alpha"] = NevanlinnaEvaluator(1, self.boundary_function,
                                                            name="E - 1/alpha")
        if self.comparison_c is not None:
            evaluators["M_alpha"] = NevanlinnaEvaluator(
                1, lambda z: self.weyl(self.alpha, z), name="M_alpha")
            evaluators["M_0"] = NevanlinnaEvaluator(1, lambda z: self.weyl(0.0, z), name="M_0")
        return evaluators

    def boundary_trace(self, z, path="direct"):
        if path == "direct":
            return trace_im_log(NevanlinnaEvaluator(1, self.boundary_function), z)
        return trace_im_log(NevanlinnaEvaluator(1, lambda w: self.weyl(self.alpha, w)), z) - \
            trace_im_log(NevanlinnaEvaluator(1, lambda w: self.weyl(0.0, w)), z)

    def ssf(self, grid, schedule=DEFAULT_SCHEDULE, path="direct", power=1, workers=1):
        """
        Spectral shift function of {H, H_alpha}

        Args:
            grid(list): Real points
            schedule(EpsilonSchedule): Boundary limit rule
            path(str): "direct" uses log(E - 1/alpha) and needs alpha < 0, "comparison" uses
                log M_alpha - log M_0 and needs comparison_c

        Raises:
            SignPathMismatch: alpha >= 0 on the direct path

        """

        if path not in PATHS:
            raise ValueError("Unknown path {}, expected one of {}".format(path, PATHS))
        if path == "direct" and self.alpha >= 0:
            raise SignPathMismatch(
                "The direct path needs alpha < 0, got alpha = {}".format(self.alpha))
        if path == "comparison" and self.comparison_c is None:
            raise ValueError("The comparison path needs comparison_c")

        values = evaluate_grid(lambda z: self.boundary_trace(z, path), grid, schedule, workers)
        return SsfGrid(grid, values, schedule, power)

    def closed_form(self, grid):
        """arctan(|alpha|/(2 sqrt lam))/pi for lam > 0 and 0 below, valid for alpha < 0"""
        grid = numpy.asarray(grid, dtype=float)
        positive = numpy.clip(grid, 0.0, None)
        with numpy.errstate(divide="ignore"):
            values = numpy.arctan(abs(self.alpha)/(2*numpy.sqrt(positive)))/numpy.pi
        return numpy.where(grid > 0, values, 0.0)

    def resolvent_trace_difference(self, z):
        """tr((H_alpha - z)^-1 - (H - z)^-1) = -E'(z)/(E(z) - 1/alpha)"""
        return -dtn_delta_derivative(z)/self.boundary_function(z)
