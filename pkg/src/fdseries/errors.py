"""Exception hierarchy.  Every error carries the CLI exit code it maps to."""


class FDSeriesError(Exception):
    exit_code = 2


class ParseError(FDSeriesError):
    exit_code = 1

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(FDSeriesError):
    exit_code = 2


class TowerMismatchError(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class ReducibleMinimalPolynomial(PreconditionError):
    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = list(factors)


class IntegrabilityError(PreconditionError):
    pass


class PoleError(PreconditionError):
    pass


class MissingGeneratorSeries(PreconditionError):
    pass


class VerificationError(FDSeriesError):
    exit_code = 3

    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class UnsupportedError(FDSeriesError):
    exit_code = 4


class LeadingEquationUnsupported(UnsupportedError):
    pass


class MissingSolutionElement(UnsupportedError):
    pass
