class BraidSeedError(Exception):
    EXIT_CODE = 1


class InvalidInput(BraidSeedError, ValueError):
    EXIT_CODE = 2


class EmptyVariety(BraidSeedError):
    EXIT_CODE = 3


class BudgetExceeded(BraidSeedError):
    EXIT_CODE = 2


class InvariantViolation(BraidSeedError):
    """An engine bug: the computed data broke an identity that must hold."""
    EXIT_CODE = 4

    def __init__(self, message, dump=None):
        self.dump = dump
        if dump:
            message = f"{message}\n{dump}"
        super().__init__(message)


class IntegralityViolation(InvariantViolation):
    pass


class DeterminantViolation(InvariantViolation):
    pass


class RouteDisagreement(InvariantViolation):
    pass


class KernelViolation(InvariantViolation):
    pass
