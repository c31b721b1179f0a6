"""Exceptions for the package."""
from raiutils.exceptions import UserConfigValidationException


class SystemException(Exception):
    """An exception indicating that some system exception happened during execution.

    :param exception_message: A message describing the error.
    :type exception_message: str
    """
    _error_code = "System Error"


class SchemaError(UserConfigValidationException):
    """A run configuration that does not conform to the configuration schema.

    :param exception_message: A message describing the error.
    :type exception_message: str
    :param field_path: Dotted path of the offending field, '<root>' for the document itself.
    :type field_path: str
    """
    _error_code = "Schema Error"

    def __init__(self, exception_message, field_path="<root>"):
        super().__init__(exception_message)
        self.field_path = field_path


class IoError(OSError):
    """A configuration or output file that could not be read or written."""
    _error_code = "IO Error"


class DomainError(ValueError):
    """A special function called outside its supported order/argument domain."""
    _error_code = "Domain Error"


class AmbiguousPoint(ValueError):
    """A point lying on (or numerically on) one of the interfaces."""
    _error_code = "Ambiguous Point"


class SingularGeometry(ValueError):
    """Two curves that touch, or a curve with a vanishing speed."""
    _error_code = "Singular Geometry"


class MeshTooCoarse(ValueError):
    """A volume grid with too few nodes inside the obstacle."""
    _error_code = "Mesh Too Coarse"


class IllConditioned(SystemException):
    """The discrete transmission system is numerically singular.

    Raised when the condition estimate of the assembled system exceeds the
    threshold. This signals a configuration close to an interior resonance,
    for instance one where k2^2 is a Neumann eigenvalue of the obstacle.
    """
    _error_code = "Ill Conditioned"

    def __init__(self, exception_message, condition_estimate=None):
        super().__init__(exception_message)
        self.condition_estimate = condition_estimate


class ModeSystemSingular(SystemException):
    """A resonant angular mode in the separation-of-variables series."""
    _error_code = "Mode System Singular"


class PointTooCloseWarning(UserWarning):
    """Field evaluated closer to a curve than the trapezoid rule resolves."""
