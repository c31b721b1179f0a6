"""Module containing the kite-shaped boundary curve."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import CurveKinds
from layered_scatter.curve_interfaces.base_curve import _BaseCurve


class KiteCurve(_BaseCurve):
    """Kite x(t) = c + s (cos t + 0.65 cos 2t - 0.65, 1.5 sin t), a standard non-convex test obstacle."""

    kind = CurveKinds.Kite

    def __init__(self, params):
        """Init method

        :param scale (optional): Positive scale factor s, default 1.
        :param center (optional): Translation of the kite, defaults to the origin.
        :param n_nodes (optional): Even number of quadrature nodes, default 64.
        """
        self._validate_and_set_common(params)
        scale = params.get('scale', 1.0)
        if not np.isfinite(scale) or scale <= 0:
            raise UserConfigValidationException("kite scale should be a positive number, got {0}".format(scale))
        self.scale = float(scale)
        self._discretize()

    def _shape(self, t):
        s = self.scale
        rel = s * np.column_stack((np.cos(t) + 0.65 * np.cos(2 * t) - 0.65, 1.5 * np.sin(t)))
        d1 = s * np.column_stack((-np.sin(t) - 1.3 * np.sin(2 * t), 1.5 * np.cos(t)))
        d2 = s * np.column_stack((-np.cos(t) - 2.6 * np.cos(2 * t), -1.5 * np.sin(t)))
        return rel, d1, d2

    def shape_params(self):
        return {'scale': self.scale}
