"""Exception types shared across the package.

Each error carries the CLI exit code it maps to, so the front end can
translate library failures without a lookup table of its own.
"""


class NottinghamError(Exception):
    exit_code = 2


class BadPrime(NottinghamError, ValueError):
    pass


class ZeroInverse(NottinghamError, ZeroDivisionError):
    pass


class ModulusMismatch(NottinghamError, ValueError):
    pass


class NonzeroConstantTerm(NottinghamError, ValueError):
    pass


class NotNottingham(NottinghamError, ValueError):
    pass


class DomainMismatch(NottinghamError, ValueError):
    pass


class ExponentOverflow(NottinghamError, ValueError):
    pass


class EmptyPrimeList(NottinghamError, ValueError):
    pass


class NotApplicable(NottinghamError):
    """A theorem check was requested on a series outside its hypotheses."""


class InsufficientPrecision(NottinghamError):
    exit_code = 3


class PrecisionOverflow(NottinghamError, OverflowError):
    """The truncation needed for a request is beyond what is feasible."""

    exit_code = 4


class TermCapExceeded(NottinghamError):
    exit_code = 4
