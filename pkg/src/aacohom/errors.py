"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Two forms with different ambient dimensions were combined."""


class UnsupportedModeError(ValueError):
    """The requested operation is not defined for this weight mode."""


class SizeLimitError(ValueError):
    """The requested computation exceeds the built-in size guard."""


class NotACocycleError(ValueError):
    """A form that was required to be closed is not."""


class InvalidSymplecticFormError(ValueError):
    """A user-supplied 2-form is not closed or not nondegenerate."""


class StructureViolationError(ValueError):
    """A Lefschetz matrix does not match its predicted block structure.

    Carries the first differing entry as (row, col, expected, got).
    """

    def __init__(self, row, col, expected, got):
        self.row = row
        self.col = col
        self.expected = expected
        self.got = got
        super().__init__(
            f"structure mismatch at entry ({row}, {col}): "
            f"expected {expected}, got {got}"
        )


class InvariantViolationError(RuntimeError):
    """An exact check contradicted a theorem; signals an implementation bug."""


class InvalidParameterError(ValueError):
    """A numeric parameter violates its precondition."""


class CertificateFailureError(ValueError):
    """A lattice certificate could not be established.

    ``prime`` is the shared prime factor when coprimality fails.
    """

    def __init__(self, message, prime=None):
        self.prime = prime
        super().__init__(message)


class NoHarmonicRepresentativeError(RuntimeError):
    """No harmonic representative exists for the given cohomology class."""
