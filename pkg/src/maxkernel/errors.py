"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`MaxKernelError`, so drivers can catch the whole family at once.
"""


class MaxKernelError(Exception):
    """Base class for all package errors."""


# field construction and arithmetic
class NonPrimeP(MaxKernelError, ValueError):
    pass


class GcdViolation(MaxKernelError, ValueError):
    pass


class FieldTooLarge(MaxKernelError, ValueError):
    pass


class DivisionByZero(MaxKernelError, ZeroDivisionError):
    pass


class NonDivisor(MaxKernelError, ValueError):
    pass


class NoRoot(MaxKernelError, ValueError):
    pass


# linearized polynomials
class ZeroPolynomial(MaxKernelError, ValueError):
    pass


class NotMonicNegated(MaxKernelError, ValueError):
    pass


class IndexOutOfRange(MaxKernelError, IndexError):
    pass


class HypothesisViolated(MaxKernelError, ValueError):
    pass


# trinomial characterizations
class RangeError(MaxKernelError, ValueError):
    pass


class PreconditionFailed(MaxKernelError, ValueError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("precondition failed: " + ", ".join(self.failed))


class BudgetExceeded(MaxKernelError, RuntimeError):
    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"{required} kernel computations required, budget is {budget}")


# codes
class NotSubspace(MaxKernelError, ValueError):
    pass


class SigmaMismatch(MaxKernelError, ValueError):
    pass


class ZeroBelowTop(MaxKernelError, ValueError):
    pass


class MalformedShape(MaxKernelError, ValueError):
    pass


# cli
class UnknownTarget(MaxKernelError, ValueError):
    pass
