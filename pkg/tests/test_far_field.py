import numpy as np
import pandas as pd
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import FarField
from layered_scatter.far_field import default_angles


class TestFarField:
    def test_default_angles(self):
        angles = default_angles()
        assert len(angles) == 360
        assert angles[0] == 0.0
        assert angles[90] == pytest.approx(0.5 * np.pi)
        assert angles[-1] < 2.0 * np.pi

    def test_directions_and_max_abs(self):
        far = FarField([0.0, 0.5 * np.pi], [1.0 + 1.0j, -3.0])
        assert np.allclose(far.directions, [[1.0, 0.0], [0.0, 1.0]], atol=1e-15)
        assert far.max_abs == 3.0
        assert len(far) == 2
        assert FarField([], []).max_abs == 0.0

    def test_relative_error(self):
        angles = default_angles(8)
        reference = FarField(angles, 2.0 * np.ones(8))
        perturbed = FarField(angles, 2.0 * np.ones(8) + 0.02j)
        assert perturbed.relative_error(reference) == pytest.approx(0.01)
        assert reference.relative_error(reference) == 0.0

    def test_relative_error_of_zero_reference_is_absolute(self):
        angles = default_angles(4)
        assert FarField(angles, 0.5 * np.ones(4)).relative_error(FarField(angles, np.zeros(4))) == 0.5

    def test_relative_error_mismatched_angles(self):
        with pytest.raises(UserConfigValidationException, match="different angles"):
            FarField(default_angles(4), np.ones(4)).relative_error(FarField(default_angles(4) + 0.1, np.ones(4)))

    @pytest.mark.parametrize("angles, values", [
        ([0.0, 1.0], [1.0]),
        ([0.0], [np.nan]),
        ([0.0], [np.inf + 0.0j]),
    ])
    def test_invalid_values(self, angles, values):
        with pytest.raises(UserConfigValidationException):
            FarField(angles, values)

    def test_to_csv(self, tmp_path):
        far = FarField(default_angles(4), [1.0, 1.0j, -1.0, 0.1 + 0.2j])
        path = far.to_csv(str(tmp_path / 'farfield.csv'))
        frame = pd.read_csv(path, float_precision='round_trip')
        assert list(frame.columns) == ['theta_rad', 're_uinf', 'im_uinf']
        assert np.array_equal(frame['theta_rad'].to_numpy(), far.angles)
        assert np.array_equal(frame['re_uinf'].to_numpy() + 1j * frame['im_uinf'].to_numpy(), far.values)
        with open(path, 'rb') as csv_file:
            assert b'\r\n' not in csv_file.read()
