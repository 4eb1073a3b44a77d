"""Exception and warning types raised across the package."""


class MSISError(Exception):
    """Base class for every error raised by msis."""


class InvalidImage(MSISError, ValueError):
    pass


class LengthMismatch(MSISError, ValueError):
    pass


class InvalidPlane(MSISError, ValueError):
    pass


class EmptyStream(MSISError, ValueError):
    pass


class SideMismatch(MSISError, ValueError):
    pass


class NotSquare(MSISError, ValueError):
    pass


class DimensionMismatch(MSISError, ValueError):
    pass


class EmptyInput(MSISError, ValueError):
    pass


# -- share containers -------------------------------------------------------

class MalformedContainer(MSISError, ValueError):
    pass


class DimensionInconsistency(MalformedContainer):
    """Header fields disagree with the share image they describe."""


class BadMagic(MalformedContainer):
    pass


class UnsupportedVersion(MalformedContainer):
    pass


class HeaderInvariantViolation(MalformedContainer):
    pass


class TruncatedPayload(MalformedContainer):
    pass


class SinkFailure(MSISError, OSError):
    pass


# -- image files ------------------------------------------------------------

class UnsupportedFormat(MSISError, ValueError):
    pass


class MalformedFile(MSISError, ValueError):
    pass


# -- warnings ---------------------------------------------------------------

class ClearTailWarning(UserWarning):
    """The comparison image is too small, so part of the pad is zeros and
    the matching secret bits travel unencrypted."""


class ColorConversionWarning(UserWarning):
    """A color image was reduced to luminance on load."""
