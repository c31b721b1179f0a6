"""Module containing the axis-aligned ellipse boundary curve."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import CurveKinds
from layered_scatter.curve_interfaces.base_curve import _BaseCurve


class EllipseCurve(_BaseCurve):
    """Ellipse x(t) = c + (a cos t, b sin t)."""

    kind = CurveKinds.Ellipse

    def __init__(self, params):
        """Init method

        :param semi_axes: Pair (a, b) of positive semi-axes along x and y.
        :param center (optional): Centre, defaults to the origin.
        :param n_nodes (optional): Even number of quadrature nodes, default 64.
        """
        self._validate_and_set_common(params)
        semi_axes = np.asarray(params.get('semi_axes', ()), dtype=float)
        if semi_axes.shape != (2,) or np.any(~np.isfinite(semi_axes)) or np.any(semi_axes <= 0):
            raise UserConfigValidationException(
                "ellipse semi_axes should be two positive numbers, got {0}".format(params.get('semi_axes')))
        self.semi_axes = semi_axes
        self._discretize()

    def _shape(self, t):
        a, b = self.semi_axes
        cos, sin = np.cos(t), np.sin(t)
        rel = np.column_stack((a * cos, b * sin))
        d1 = np.column_stack((-a * sin, b * cos))
        return rel, d1, -rel

    def shape_params(self):
        return {'semi_axes': self.semi_axes.tolist()}
