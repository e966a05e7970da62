"""Exception hierarchy shared by all modules.

Every anticipated failure (bad input, singular expansion, failed
verification) raises a subclass of HypercfError so the CLI can map it to a
stable exit code.  Anything else escaping is a genuine bug.
"""


class HypercfError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HypercfError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class DivisionByZeroError(HypercfError):
    """Exact division by zero; reported, never a crash."""


class PoleError(HypercfError):
    """A rational-function evaluation hit a pole.

    Carries the variable assignment that produced the pole.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class SingularExpansionError(HypercfError):
    """The continued-fraction recursion broke down (some d_n = 0).

    ``index`` is the line at which the expansion terminates.
    """

    def __init__(self, index, message=None):
        super().__init__(message or f"expansion terminates/singular at n={index}")
        self.index = index


class SingularOrbitError(HypercfError):
    """A map iteration hit a vanishing denominator.

    ``index`` is the step at which the orbit became singular, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class VerificationError(HypercfError):
    """An exact identity that should hold failed (CLI exit code 1)."""
