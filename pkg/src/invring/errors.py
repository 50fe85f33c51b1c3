"""Exception hierarchy shared by the kernel and the command line."""


class InvringError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ParseError(InvringError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class DimensionError(InvringError, ValueError):
    """Operands live in rings of different size, or a matrix has the wrong shape."""


class ZeroPolynomialError(InvringError, ValueError):
    """An operation needs a nonzero polynomial (leading term, S-polynomial)."""


class DegreeError(InvringError, ValueError):
    """Degree outside what a truncated Groebner basis can decide."""


class AlreadyMemberError(InvringError, ValueError):
    """The polynomial reduces to zero, so it cannot extend the basis."""


class ValidationError(InvringError):
    exit_code = 3


class InvalidPrimariesError(ValidationError):
    pass


class ResourceError(InvringError):
    exit_code = 4


class GroupTooLargeError(ResourceError):
    pass
