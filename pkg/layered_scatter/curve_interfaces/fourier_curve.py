"""Module containing star-shaped curves given by a Fourier series of the radius."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import CurveKinds
from layered_scatter.curve_interfaces.base_curve import _BaseCurve

_POSITIVITY_SAMPLES = 4096


class FourierCurve(_BaseCurve):
    """Radial curve x(t) = c + r(t) (cos t, sin t), r(t) = a0 + sum_m (a_m cos mt + b_m sin mt)."""

    kind = CurveKinds.Fourier

    def __init__(self, params):
        """Init method

        :param cos_coefficients: [a0, a1, ..., aM], a0 > 0.
        :param sin_coefficients (optional): [b1, ..., bM], defaults to zeros.
        :param center (optional): Centre, defaults to the origin.
        :param n_nodes (optional): Even number of quadrature nodes, default 64.
        """
        self._validate_and_set_common(params)
        cos_coefficients = np.asarray(params.get('cos_coefficients', ()), dtype=float)
        sin_coefficients = np.asarray(params.get('sin_coefficients', ()), dtype=float)
        if cos_coefficients.ndim != 1 or len(cos_coefficients) == 0:
            raise UserConfigValidationException("fourier curve needs at least the mean radius in cos_coefficients")
        order = max(len(cos_coefficients) - 1, len(sin_coefficients))
        self.cos_coefficients = np.zeros(order + 1)
        self.cos_coefficients[:len(cos_coefficients)] = cos_coefficients
        self.sin_coefficients = np.zeros(order + 1)
        self.sin_coefficients[1:len(sin_coefficients) + 1] = sin_coefficients

        t = 2.0 * np.pi * np.arange(_POSITIVITY_SAMPLES) / _POSITIVITY_SAMPLES
        if np.min(self._radius(t)[0]) <= 0.0:
            raise UserConfigValidationException("fourier curve radius r(t) should stay positive")
        self._discretize()

    def _radius(self, t):
        m = np.arange(len(self.cos_coefficients))
        cos_mt, sin_mt = np.cos(np.outer(t, m)), np.sin(np.outer(t, m))
        r = cos_mt @ self.cos_coefficients + sin_mt @ self.sin_coefficients
        dr = (-sin_mt * m) @ self.cos_coefficients + (cos_mt * m) @ self.sin_coefficients
        ddr = (-cos_mt * m ** 2) @ self.cos_coefficients + (-sin_mt * m ** 2) @ self.sin_coefficients
        return r, dr, ddr

    def _shape(self, t):
        r, dr, ddr = self._radius(t)
        radial = np.column_stack((np.cos(t), np.sin(t)))
        tangential = np.column_stack((-np.sin(t), np.cos(t)))
        rel = r[:, None] * radial
        d1 = dr[:, None] * radial + r[:, None] * tangential
        d2 = (ddr - r)[:, None] * radial + 2.0 * dr[:, None] * tangential
        return rel, d1, d2

    def shape_params(self):
        return {'cos_coefficients': self.cos_coefficients.tolist(),
                'sin_coefficients': self.sin_coefficients[1:].tolist()}
