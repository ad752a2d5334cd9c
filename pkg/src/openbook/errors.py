"""Exception types shared across modules.

``ParseError`` maps to CLI exit code 2 and ``NumericalFailure`` subclasses
map to exit code 4.
"""


class ParseError(ValueError):
    pass


class IllegalEvent(ValueError):
    pass


class DisconnectedSurface(ValueError):
    pass


class RealizabilityError(RuntimeError):
    pass


class NumericalFailure(RuntimeError):
    pass


class DegenerateCriticalValues(NumericalFailure):
    pass


class ContinuationLoss(NumericalFailure):
    pass


class StepFailure(NumericalFailure):
    pass


class ProjectionDegenerate(NumericalFailure):
    pass


class ConventionError(NumericalFailure):
    pass
