"""Exception hierarchy shared by every module.

Validation problems (bad inputs, violated preconditions) and numerical guards
(near-singular quantities) are kept apart so the CLI can map them to distinct
exit codes.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class SuperluminalError(ValidationError):
    """Rim speed |r * Omega| reaches or exceeds c."""


class NormalizationError(ValidationError):
    """State handed to a detection functional is not normalized."""


class NumericalGuardError(ArithmeticError):
    """A quantity is too close to a singularity to be evaluated reliably."""


class ZeroNormError(NumericalGuardError):
    """Spectrum has (numerically) zero norm and cannot be renormalized."""
