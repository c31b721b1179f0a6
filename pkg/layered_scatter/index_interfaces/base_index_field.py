"""Module containing the base class for refractive-index fields on the obstacle."""

from abc import ABC, abstractmethod

import numpy as np
from raiutils.exceptions import UserConfigValidationException


class _BaseIndexField(ABC):
    """Complex refractive index n(x) with Re n > 0 and Im n >= 0."""

    kind = None

    @abstractmethod
    def __init__(self, params):
        """The init method needs to be implemented by the inheriting classes."""
        pass

    def _evaluate(self, points):
        raise NotImplementedError("{0} does not implement _evaluate".format(type(self).__name__))

    def to_params(self):
        """Parameters that rebuild this field through the IndexField front class."""
        raise NotImplementedError("{0} does not implement to_params".format(type(self).__name__))

    @property
    def is_unit(self):
        """True when n is identically one, i.e. the obstacle has no contrast."""
        return False

    @property
    def support_radius(self):
        """Radius of a disk around support_center containing supp(n - 1), None if unknown."""
        return None

    @property
    def support_center(self):
        return None

    @property
    def is_lossless(self):
        return False

    def evaluate(self, points):
        """Sample n at each point of a (P, 2) array.

        :raises UserConfigValidationException: if a sample violates Re n > 0 or Im n >= 0.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.asarray(self._evaluate(points), dtype=complex)
        bad = (values.real <= 0.0) | (values.imag < 0.0) | ~np.isfinite(values)
        if np.any(bad):
            raise UserConfigValidationException(
                "refractive index should satisfy Re(n) > 0 and Im(n) >= 0, violated at {0}".format(
                    points[bad][0].tolist()))
        return values

    @staticmethod
    def _complex_param(params, name, default=None):
        value = params.get(name, default)
        if value is None:
            raise UserConfigValidationException("{0} is required".format(name))
        value = complex(value) + 1j * float(params.get(name + '_imag', 0.0))
        if not np.isfinite(value):
            raise UserConfigValidationException("{0} should be finite".format(name))
        return value
