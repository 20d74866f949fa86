"""Exception types shared across the package.

Every error derives from :class:`RegionalError`.  Input and validation problems
also derive from :class:`ValueError`; resource limits from :class:`CapError`.
The CLI maps these two families onto distinct exit codes.
"""

from __future__ import annotations


class RegionalError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RegionalError, ValueError):
    """Malformed or inconsistent input."""


class CapError(RegionalError):
    """A configured resource limit would be exceeded."""


# diagram codes
class MalformedEntry(InputError):
    pass


class EdgeCountError(InputError):
    pass


class ConnectivityError(InputError):
    pass


class OrderingError(InputError):
    pass


class EmptyInput(InputError):
    pass


class MultiComponent(InputError):
    pass


class SingularPresent(InputError):
    pass


# words and chains
class LengthMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class DegreeZero(InputError):
    pass


class MixedDegree(InputError):
    pass


class BasisIncomplete(InputError):
    pass


class GroupTableError(InputError):
    pass


# limits
class CapExceeded(CapError):
    pass


class RecursionBudgetExceeded(CapError):
    pass


class TooManyCrossings(CapError):
    pass
