"""Exception taxonomy shared across the package.

ConfigurationError maps to CLI exit code 2, InvariantViolation to exit
code 1; everything else derives from ValueError and is a caller bug.
"""


class ConfigurationError(ValueError):
    """Bad user-supplied input (out-of-range bound, malformed flag, ...)."""


class DomainError(ValueError):
    """Argument outside an operation's mathematical domain."""


class SingularCurveError(DomainError):
    """Weierstrass coefficients with vanishing discriminant."""


class BadReductionError(DomainError):
    """Point counting requested at a prime of bad reduction."""


class RamifiedPrimeError(DomainError):
    """Splitting test at a prime dividing the field modulus."""


class InvariantViolation(AssertionError):
    """A certified internal invariant failed; indicates a real bug."""
