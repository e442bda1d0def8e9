"""
Exceptions raised by the spectral shift computations.

Numerical failures derive from SpectralShiftError, input problems from ValueError.

"""


class SpectralShiftError(ArithmeticError):
    """
    Base class for numerical failures

    Args:
        message(str): Diagnostic text
        point(complex): Spectral parameter (z or lambda) at which the failure happened

    """

    def __init__(self, message, point=None):
        super(SpectralShiftError, self).__init__(message)

        self.point = point

    def __str__(self):
        message = super(SpectralShiftError, self).__str__()
        if self.point is None:
            return message
        return "{} (at {})".format(message, self.point)


class SpectrumHit(SpectralShiftError):
    pass


class NeumannEigenvalueHit(SpectrumHit):
    pass


class DirichletEigenvalueHit(SpectrumHit):
    pass


class BranchCutHit(SpectralShiftError):
    pass


class BranchViolation(SpectralShiftError):
    pass


class QuadratureFailure(SpectralShiftError):
    pass


class SingularValue(SpectralShiftError):
    pass


class SingularWeyl(SpectralShiftError):
    pass


class SingularFactor(SpectralShiftError):
    pass


class ExtrapolationUnstable(SpectralShiftError):
    pass


class TailTooFat(SpectralShiftError):
    pass


class OdeSolveFailure(SpectralShiftError):
    pass


class RootFindingFailure(SpectralShiftError):
    pass


class GridMismatch(ValueError):
    pass


class SignPathMismatch(ValueError):
    pass
