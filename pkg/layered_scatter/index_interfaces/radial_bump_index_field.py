"""Module containing the compactly supported smooth bump index."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import IndexFieldKinds
from layered_scatter.index_interfaces.base_index_field import _BaseIndexField


class RadialBumpIndexField(_BaseIndexField):
    """n(x) = 1 + A exp(1 - 1 / (1 - (r/R)^2)) for r = |x - c| < R and 1 elsewhere.

    The bump is C-infinity, equals 1 + A at the centre and 1 - n vanishes
    outside the disk of radius R.
    """

    kind = IndexFieldKinds.RadialBump

    def __init__(self, params):
        """Init method

        :param radius: Support radius R > 0.
        :param amplitude: Complex peak contrast A with Im A >= 0 and Re A > -1.
        :param center (optional): Bump centre, defaults to the origin.
        """
        center = np.asarray(params.get('center', (0.0, 0.0)), dtype=float)
        if center.shape != (2,):
            raise UserConfigValidationException("bump center should be a 2-vector")
        radius = params.get('radius')
        if radius is None or not np.isfinite(radius) or radius <= 0:
            raise UserConfigValidationException("bump radius should be a positive number, got {0}".format(radius))
        amplitude = self._complex_param(params, 'amplitude')
        if amplitude.real <= -1.0 or amplitude.imag < 0.0:
            raise UserConfigValidationException(
                "bump amplitude should keep Re(n) > 0 and Im(n) >= 0, got {0}".format(amplitude))
        self.center = center
        self.radius = float(radius)
        self.amplitude = amplitude

    def _evaluate(self, points):
        rho2 = np.sum((points - self.center) ** 2, axis=1) / self.radius ** 2
        values = np.ones(len(points), dtype=complex)
        inside = rho2 < 1.0
        values[inside] += self.amplitude * np.exp(1.0 - 1.0 / (1.0 - rho2[inside]))
        return values

    @property
    def is_unit(self):
        return self.amplitude == 0.0

    @property
    def is_lossless(self):
        return self.amplitude.imag == 0.0

    @property
    def support_radius(self):
        return self.radius

    @property
    def support_center(self):
        return self.center

    def to_params(self):
        return {'kind': self.kind, 'center': self.center.tolist(), 'radius': self.radius,
                'amplitude': self.amplitude.real, 'amplitude_imag': self.amplitude.imag}
