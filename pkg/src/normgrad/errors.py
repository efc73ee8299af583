"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument or call violates a documented precondition."""


class NumericalFailure(RuntimeError):
    """A computation produced a nonfinite value; the message names the step."""


class DegeneratePointError(ValueError):
    """A pointwise quantity was requested where it is undefined (f(x) = f*)."""
