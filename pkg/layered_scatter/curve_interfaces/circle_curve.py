"""Module containing the circle boundary curve."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import CurveKinds
from layered_scatter.curve_interfaces.base_curve import _BaseCurve


class CircleCurve(_BaseCurve):
    """Circle x(t) = c + r (cos t, sin t)."""

    kind = CurveKinds.Circle

    def __init__(self, params):
        """Init method

        :param radius: Radius r > 0.
        :param center (optional): Centre, defaults to the origin.
        :param n_nodes (optional): Even number of quadrature nodes, default 64.
        """
        self._validate_and_set_common(params)
        radius = params.get('radius')
        if radius is None or not np.isfinite(radius) or radius <= 0:
            raise UserConfigValidationException("circle radius should be a positive number, got {0}".format(radius))
        self.radius = float(radius)
        self._discretize()

    def _shape(self, t):
        cos, sin = np.cos(t), np.sin(t)
        rel = self.radius * np.column_stack((cos, sin))
        d1 = self.radius * np.column_stack((-sin, cos))
        return rel, d1, -rel

    def shape_params(self):
        return {'radius': self.radius}
