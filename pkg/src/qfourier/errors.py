"""Exception hierarchy shared by every module."""


class QFourierError(Exception):
    """Base class for all library errors."""


class DomainError(QFourierError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class AxisError(QFourierError, ValueError):
    """Axis pair is not two perpendicular unit pure quaternions."""


class GridError(QFourierError, ValueError):
    """Signals or spectra are not bound to compatible grids."""


class ParamError(QFourierError, ValueError):
    """Invalid linear canonical transform parameters."""


class ResampleError(QFourierError, ValueError):
    """A scaled coordinate cannot be represented on the available grid."""


class FormatError(QFourierError, ValueError):
    """Malformed file contents (QSF, CSV or image)."""
