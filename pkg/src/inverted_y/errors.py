"""Exception hierarchy shared by the analytic, oracle and CLI layers."""


class InvertedYError(Exception):
    """Base class for all package errors."""


class ValidationError(InvertedYError, ValueError):
    """A parameter or state failed its invariants."""


class NonNormalizedInitialState(ValidationError):
    pass


class NegativeRate(ValidationError):
    pass


class NonFiniteParameter(ValidationError):
    pass


class NotResonant(ValidationError):
    """A resonant-only closed form was asked to handle nonzero detunings."""


class SingularEvaluation(InvertedYError, ArithmeticError):
    """The pole-cleared denominator of C2~(s) vanishes at the requested point."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateRoots(InvertedYError, ArithmeticError):
    """Partial fractions requested for roots that (nearly) coincide."""


class StepTooLarge(InvertedYError, ValueError):
    pass


class NotConverged(InvertedYError, RuntimeError):
    """The emitting amplitudes have not decayed by the end of the trajectory."""
