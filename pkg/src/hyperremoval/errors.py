"""
Exception hierarchy shared by every module.

Each exception carries the process exit code the command line front door
uses when the error escapes a subcommand:

    0  all declared invariants verified
    1  verification failure / construction failure
    2  usage error (bad parameters, violated preconditions)
    3  cap or node budget exceeded
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET_EXCEEDED = 3


class HyperremovalError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = EXIT_VERIFICATION_FAILED


class ParameterError(HyperremovalError, ValueError):
    """An argument is out of range or a file is malformed."""

    exit_code = EXIT_USAGE


class PreconditionError(HyperremovalError):
    """A documented precondition of an operation does not hold."""

    exit_code = EXIT_USAGE


class BudgetExceededError(HyperremovalError):
    """A search ran out of its node budget, or an oracle cap was hit."""

    exit_code = EXIT_BUDGET_EXCEEDED

    def __init__(self, message, limit=None, used=None):
        super().__init__(message)
        self.limit = limit
        self.used = used


class ConstructionError(HyperremovalError):
    """A randomized construction could not reach its size guarantee."""

    exit_code = EXIT_VERIFICATION_FAILED


class VerificationError(HyperremovalError, AssertionError):
    """A self-certifying invariant failed."""

    exit_code = EXIT_VERIFICATION_FAILED


def require(condition, message, *args):
    """
    Raise VerificationError with a %-formatted message unless condition holds.

    Args:
        condition: The invariant that must hold
        message: Message template
        args: Template arguments
    """
    if not condition:
        raise VerificationError(message % args if args else message)
