"""Exception types raised by the simulator."""


class ZenoError(Exception):
    """Base class for all errors raised by :mod:`zeno_cz`."""


class DomainError(ZenoError, ValueError):
    """A quantity is undefined at the requested parameters (e.g. tau <= 0)."""


class DegenerateClosedFormError(ZenoError, ArithmeticError):
    """The closed-form tau hit confluent eigenvalues (|d| ~ 0)."""


class BracketError(ZenoError, ValueError):
    """A root or maximum is not enclosed by the search bracket."""


class NonFiniteObjectiveError(ZenoError, ValueError):
    """An objective function returned NaN or infinity."""


class InvalidSpecError(ZenoError, ValueError):
    """A sweep specification or CLI argument combination is invalid."""
