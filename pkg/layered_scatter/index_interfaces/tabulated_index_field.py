"""Module containing an index sampled on a rectilinear table."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException
from scipy.interpolate import RegularGridInterpolator

from layered_scatter.constants import IndexFieldKinds
from layered_scatter.index_interfaces.base_index_field import _BaseIndexField


class TabulatedIndexField(_BaseIndexField):
    """Bilinear interpolation of n on a rectilinear grid, n = 1 outside the table."""

    kind = IndexFieldKinds.Tabulated

    def __init__(self, params):
        """Init method

        :param x: Strictly increasing grid abscissae.
        :param y: Strictly increasing grid ordinates.
        :param values: Real parts, array of shape (len(x), len(y)).
        :param values_imag (optional): Imaginary parts of the same shape, default zeros.
        """
        x = np.asarray(params.get('x', ()), dtype=float)
        y = np.asarray(params.get('y', ()), dtype=float)
        real = np.asarray(params.get('values', ()), dtype=float)
        imag = np.asarray(params.get('values_imag', np.zeros_like(real)), dtype=float)
        if len(x) < 2 or len(y) < 2 or np.any(np.diff(x) <= 0) or np.any(np.diff(y) <= 0):
            raise UserConfigValidationException("tabulated index needs strictly increasing x and y with >= 2 entries")
        if real.shape != (len(x), len(y)) or imag.shape != real.shape:
            raise UserConfigValidationException(
                "tabulated values should have shape {0}, got {1}".format((len(x), len(y)), real.shape))
        if np.any(real <= 0) or np.any(imag < 0):
            raise UserConfigValidationException("tabulated index should satisfy Re(n) > 0 and Im(n) >= 0")
        self.x, self.y = x, y
        self.values = real + 1j * imag
        self._real = RegularGridInterpolator((x, y), real, bounds_error=False, fill_value=1.0)
        self._imag = RegularGridInterpolator((x, y), imag, bounds_error=False, fill_value=0.0)

    def _evaluate(self, points):
        return self._real(points) + 1j * self._imag(points)

    @property
    def is_unit(self):
        return bool(np.all(self.values == 1.0))

    @property
    def is_lossless(self):
        return bool(np.all(self.values.imag == 0.0))

    def to_params(self):
        return {'kind': self.kind, 'x': self.x.tolist(), 'y': self.y.tolist(),
                'values': self.values.real.tolist(), 'values_imag': self.values.imag.tolist()}
