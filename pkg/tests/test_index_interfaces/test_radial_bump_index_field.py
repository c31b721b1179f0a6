import numpy as np
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import IndexField


class TestRadialBumpIndexField:
    @pytest.fixture(autouse=True)
    def _get_field(self):
        self.field = IndexField(kind='radial_bump', center=[0.1, 0.0], radius=0.5, amplitude=0.4)

    def test_peak_and_support(self):
        values = self.field.evaluate([[0.1, 0.0], [0.6, 0.0], [0.1, 0.7], [0.35, 0.0]])
        assert values[0] == pytest.approx(1.4)
        assert values[1] == 1.0 and values[2] == 1.0
        # r/R = 1/2 gives exp(1 - 4/3)
        assert values[3].real == pytest.approx(1.0 + 0.4 * np.exp(-1.0 / 3.0), rel=1e-14)
        assert self.field.support_radius == 0.5
        np.testing.assert_array_equal(self.field.support_center, [0.1, 0.0])

    def test_lossy_bump(self):
        field = IndexField(kind='radial_bump', radius=0.5, amplitude=0.5, amplitude_imag=0.3)
        assert not field.is_lossless
        assert field.evaluate([[0.0, 0.0]])[0] == pytest.approx(1.5 + 0.3j)

    @pytest.mark.parametrize("params, message", [
        ({'radius': 0.0, 'amplitude': 0.4}, "bump radius"),
        ({'radius': 0.5, 'amplitude': -1.0}, "bump amplitude"),
        ({'radius': 0.5, 'amplitude': 0.2, 'amplitude_imag': -0.1}, "bump amplitude"),
        ({'radius': 0.5}, "amplitude is required"),
    ])
    def test_invalid_parameters(self, params, message):
        with pytest.raises(UserConfigValidationException, match=message):
            IndexField(kind='radial_bump', **params)
