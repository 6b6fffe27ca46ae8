"""Exception hierarchy shared by the engine modules and the CLI."""


class MechforgeError(Exception):
    """Base class for every error raised by mechforge."""


class GameError(MechforgeError, ValueError):
    """A game description failed validation."""


class DimensionMismatch(GameError):
    pass


class MissingProfile(GameError):
    pass


class UnknownProfile(GameError):
    pass


class NonRationalNumber(GameError):
    pass


class InvalidWeights(MechforgeError, ValueError):
    pass


class DomainError(MechforgeError, ValueError):
    """A domain precondition (sign, range, scheme validity) does not hold."""


class NonPositiveOptimum(DomainError):
    pass


class NegativeBasePayoff(DomainError):
    pass


class NegativeRedistribution(DomainError):
    pass


class BudgetViolation(DomainError):
    pass


class NonPositiveScale(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class UnknownPayoffVector(DomainError):
    pass


class InvalidScheme(DomainError):
    pass


class Infeasible(MechforgeError):
    """No transfer inside the scheme makes the target an equilibrium."""

    def __init__(self, message, threshold=None):
        super().__init__(message)
        self.threshold = threshold
