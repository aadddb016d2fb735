"""Exception types shared across the package."""


class Sps2Error(Exception):
    """Base class for all library errors."""


class DimensionMismatch(Sps2Error):
    """Objects from incompatible ambient spaces were combined."""


class ZeroFormError(Sps2Error):
    """A nonzero linear form was required."""


class NotStandardizable(Sps2Error):
    """The leading basis coefficient of a form is zero; the caller is
    expected to resample its random transformation."""


class NonDivisibleError(Sps2Error):
    """Exact polynomial division was requested for a non-divisor.

    Several algorithms use this as a control signal (a rejected guess),
    not as a fatal condition.
    """


class InconsistentProjections(Sps2Error):
    """Two claimed projections cannot come from a single linear form."""


class DegenerateSystemError(Sps2Error):
    """A polynomial system expected to have finitely many solutions has a
    positive-dimensional solution set; the caller should resample."""


class SizeLimitError(Sps2Error):
    """A symbolic expansion would exceed the configured size caps."""


class InterpolationError(Sps2Error):
    """Exact interpolation failed persistently (degree bound likely wrong)."""


class InputFormatError(Sps2Error):
    """A circuit or polynomial file could not be parsed."""
