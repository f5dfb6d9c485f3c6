"""
Exception hierarchy for imex-relax.

Configuration and lookup problems derive from ValueError, numerical failures
from ArithmeticError, so callers can catch either family. The CLI maps
ValidationError to exit code 2, BlowUpError and StiffSolveError (a state that
left the admissible range) to exit code 3.
"""


class ImexRelaxError(Exception):
    """
    Base class for every error raised by the package.
    """

    exit_code = 1


class ValidationError(ImexRelaxError, ValueError):
    """
    A configuration, schema or identifier could not be validated.
    """

    exit_code = 2


class TableauLookupError(ValidationError, LookupError):
    pass


class ClassificationError(ValidationError):
    pass


class ConditionPreconditionError(ValidationError):
    pass


class UnsupportedParameterError(ValidationError):
    pass


class StructuralError(ImexRelaxError, ValueError):
    """
    An operator was applied to data whose shape cannot support it,
    e.g. a ghost halo narrower than the stencil or a singular sub-block.
    """


class NumericalError(ImexRelaxError, ArithmeticError):
    pass


class DomainError(NumericalError):
    pass


class StiffSolveError(NumericalError):
    """
    The relaxation solve found no admissible root, how a nonlinear blow-up
    usually first shows.
    """

    exit_code = 3

    def __init__(self, message, r=None, kappa=None, u=None):
        super().__init__(message)
        self.r = r
        self.kappa = kappa
        self.u = u


class SolverError(NumericalError):
    pass


class DegenerateNormError(NumericalError):
    pass


class IterationError(NumericalError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class BlowUpError(NumericalError):
    """
    The state stopped being finite during a run.
    """

    exit_code = 3

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time
