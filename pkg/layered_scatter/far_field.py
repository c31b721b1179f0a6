"""Far field patterns sampled at observation angles."""

import numpy as np
import pandas as pd
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.utils.serialize import write_csv

DEFAULT_ANGLE_COUNT = 360


def default_angles(count=DEFAULT_ANGLE_COUNT):
    """Equispaced angles 2 pi j / count, j = 0..count-1."""
    return 2.0 * np.pi * np.arange(count) / count


class FarField:
    """Values u_inf(x(theta)) with x(theta) = (cos theta, sin theta).

    The pattern is normalised by u^s(x) = exp(i k0 |x|) / sqrt(|x|) (u_inf(x/|x|) + O(1/|x|)).
    """

    COLUMNS = ['theta_rad', 're_uinf', 'im_uinf']

    def __init__(self, angles, values):
        self.angles = np.atleast_1d(np.asarray(angles, dtype=float))
        self.values = np.atleast_1d(np.asarray(values, dtype=complex))
        if self.angles.shape != self.values.shape:
            raise UserConfigValidationException("far field angles and values should have equal length")
        if not np.all(np.isfinite(self.values)):
            raise UserConfigValidationException("far field values should be finite")

    def __len__(self):
        return len(self.angles)

    @property
    def directions(self):
        return np.column_stack((np.cos(self.angles), np.sin(self.angles)))

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.values))) if len(self) else 0.0

    def relative_error(self, reference):
        """max |u - u_ref| / max |u_ref| against another FarField on the same angles."""
        if not np.allclose(self.angles, reference.angles, rtol=0.0, atol=1e-14):
            raise UserConfigValidationException("far fields are sampled at different angles")
        scale = reference.max_abs
        error = float(np.max(np.abs(self.values - reference.values)))
        return error / scale if scale > 0.0 else error

    def to_dataframe(self):
        return pd.DataFrame({'theta_rad': self.angles, 're_uinf': self.values.real,
                             'im_uinf': self.values.imag}, columns=self.COLUMNS)

    def to_csv(self, path):
        return write_csv(self.to_dataframe(), path)
