"""Exception types shared across the package."""


class MacintError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MacintError, ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset (in the UTF-8 encoding of the input) at
    which the problem was detected; ``expected`` is the set of token
    descriptions that would have been accepted there.
    """

    def __init__(self, message, offset=0, expected=frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


class UnknownIdentifierError(ParseError):
    """An identifier that is neither ``x``, a named constant nor a function."""


class DomainError(MacintError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class SingularityError(MacintError, ArithmeticError):
    """A Taylor jet cannot be formed at the requested point."""


class ConvergenceError(MacintError, RuntimeError):
    """An iterative procedure hit its work limit before meeting its tolerance."""
