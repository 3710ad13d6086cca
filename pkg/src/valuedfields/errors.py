"""Exception hierarchy shared by all toolkit modules.

Every domain failure derives from ToolkitError so callers (and the CLI)
can distinguish "the mathematics said no" from genuine bugs or usage
mistakes.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all domain-level failures."""


class NotPrime(ToolkitError):
    pass


class PrimeMismatch(ToolkitError):
    pass


class PrecisionLoss(ToolkitError):
    """The trusted digit/coefficient window no longer supports the claim.

    Raised instead of silently returning zero: a valuation must never be
    overstated.
    """


class DivisionByZero(ToolkitError):
    pass


class RingMismatch(ToolkitError):
    pass


class ArityMismatch(ToolkitError):
    pass


class BecameZero(ToolkitError):
    """Restricting a form killed every monomial (the excluded case)."""


class NotASimpleRoot(ToolkitError):
    """Seed fails the simple-zero hypothesis; try the strong lift."""


class HypothesisFailed(ToolkitError):
    pass


class ResidueObstruction(ToolkitError):
    """The residue characteristic divides the root exponent."""


class ValuationNotDivisible(ToolkitError):
    pass


class NotAnNthPower(ToolkitError):
    pass


class DomainTooLarge(ToolkitError):
    """Exhaustive enumeration would exceed the configured budget."""


class SingularResidueZero(ToolkitError):
    """Every partial derivative vanishes at the residue zero; we refuse
    to refine blindly rather than guess."""


class GroupMismatch(ToolkitError):
    pass


class TooWide(ToolkitError):
    """Tree rendering limits exceeded."""


class ParseError(ToolkitError):
    """Syntax error with position and the tokens that would have been legal."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.position = position
        self.expected = expected

    def __str__(self) -> str:
        base = super().__str__()
        if self.expected:
            return f"{base} at position {self.position} (expected {', '.join(self.expected)})"
        return f"{base} at position {self.position}"
