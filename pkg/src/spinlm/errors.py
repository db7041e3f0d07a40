"""Exception types shared across the package."""


class SpinLMError(Exception):
    """Base class."""


class InvalidInput(SpinLMError, ValueError):
    pass


class Unsupported(SpinLMError, ValueError):
    pass


class ContractViolation(SpinLMError, ValueError):
    pass


class SingularMatrix(SpinLMError, ArithmeticError):
    pass


class CharacteristicError(SpinLMError, ValueError):
    pass


class BudgetExceeded(SpinLMError, RuntimeError):
    """A monomial space or tensor space is larger than the configured cap."""
