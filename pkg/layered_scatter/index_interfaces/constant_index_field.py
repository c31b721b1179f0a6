"""Module containing the constant refractive index."""

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import IndexFieldKinds
from layered_scatter.index_interfaces.base_index_field import _BaseIndexField


class ConstantIndexField(_BaseIndexField):
    """n(x) = value everywhere in the obstacle."""

    kind = IndexFieldKinds.Constant

    def __init__(self, params):
        """Init method

        :param value (optional): Complex index, default 1. A real 'value' may be
                                 completed by 'value_imag' when coming from JSON.
        """
        self.value = self._complex_param(params, 'value', 1.0)
        if self.value.real <= 0 or self.value.imag < 0:
            raise UserConfigValidationException(
                "constant index should satisfy Re(n) > 0 and Im(n) >= 0, got {0}".format(self.value))

    def _evaluate(self, points):
        return np.full(len(points), self.value, dtype=complex)

    @property
    def is_unit(self):
        return self.value == 1.0

    @property
    def is_lossless(self):
        return self.value.imag == 0.0

    def to_params(self):
        return {'kind': self.kind, 'value': self.value.real, 'value_imag': self.value.imag}
