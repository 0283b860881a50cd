"""Exception hierarchy shared by every permpoly module."""


class PermPolyError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(PermPolyError):
    """Multiplicative inverse of zero (or zero raised to a negative power)."""


class LevelMismatch(PermPolyError):
    """Operands live on different field levels and no embedding was requested."""


class NoSuchRoot(PermPolyError):
    """No primitive d-th root of unity exists (d does not divide the group order)."""


class RangeError(PermPolyError):
    """Index, rank, or coefficient outside its documented range."""


class NotAPermutation(PermPolyError):
    """A bijection was required but the map is not one."""


class DiagramMismatch(PermPolyError):
    """The supplied maps do not form a commuting diagram instance."""


class ArityError(PermPolyError):
    """Recombinator arity does not match the number of supplied maps."""


class NoBezout(PermPolyError):
    """gcd(r, s) != 1, so no Bezout pair a*s + b*r = 1 exists."""


class PreconditionFailed(PermPolyError):
    """A named precondition of a family construction does not hold."""

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class InternalError(PermPolyError):
    """A structural self-check failed; indicates a bug, not bad input."""
