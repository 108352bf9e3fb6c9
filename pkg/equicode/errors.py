"""
Exception hierarchy for equicode.

Every precondition failure raised by the library derives from EquicodeError,
so callers (CLI, HTTP layer, sweep runner) can catch one type.
"""


class EquicodeError(Exception):
    """Base class for all toolkit errors."""


class NotInvertible(EquicodeError):
    """An integer has no inverse modulo k (θ_H is undefined for this |H|)."""


class TooLarge(EquicodeError):
    """A brute-force enumeration would exceed the configured bound."""


class GroupTooLarge(TooLarge):
    """Group closure exceeded the configured maximum order."""


class NotOrbitConstant(EquicodeError):
    """A word is not constant on the orbits of the acting subgroup."""


class DimensionMismatch(EquicodeError):
    """Operands live in spaces of different dimension or shape."""


class NotDivisible(EquicodeError):
    """A polynomial is not divisible by (xy)^d."""


class NonIntegerResult(EquicodeError):
    """A MacWilliams transform produced a non-integer coefficient."""


class NonIntegerCoefficient(EquicodeError):
    """A polynomial substituted into q-series must have integer coefficients."""


class NotDiscrete(EquicodeError):
    """A projected lattice does not have the expected rank."""


class NotMember(EquicodeError):
    """A vector is not an element of the lattice it was checked against."""


class NotConverged(EquicodeError):
    """A truncated numeric theta sum did not meet its tail bound."""


class SpecError(EquicodeError):
    """A problem specification could not be parsed or validated."""


class InvalidCutoff(SpecError):
    """A series truncation cutoff is negative."""
