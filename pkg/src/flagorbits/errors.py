"""Exception types shared across the library."""


class FlagOrbitsError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(FlagOrbitsError):
    """Valuation or degree requested for the zero polynomial."""


class NotAUnit(FlagOrbitsError):
    """Inverse requested for a series that is not a power-series unit."""


class ZeroRotation(FlagOrbitsError):
    """Loop rotation with scaling factor zero."""


class ZeroTorusParameter(FlagOrbitsError):
    """Torus element with parameter zero."""


class NotUnimodular(FlagOrbitsError):
    """Matrix violates the determinant-one contract at the required order."""


class InsufficientPrecision(FlagOrbitsError):
    """Truncation order too small to determine the requested result exactly."""


class ZeroMatrix(FlagOrbitsError):
    """Both bottom-deciding entries vanish; input cannot be unimodular."""


class InvalidLabelForLevel(FlagOrbitsError):
    """Orbit label is not in the decomposition at the given subgroup level."""


class InvolutionUndefinedAtLevel(FlagOrbitsError):
    """The antidiagonal involution does not normalize the subgroup at this level."""


class LiteralSyntaxError(FlagOrbitsError):
    """Malformed polynomial / matrix / point / label literal."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
