import numpy as np
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import IndexField


class TestTabulatedIndexField:
    @pytest.fixture(autouse=True)
    def _get_field(self):
        self.field = IndexField(kind='tabulated', x=[-1.0, 0.0, 1.0], y=[-1.0, 1.0],
                                values=[[1.0, 1.0], [2.0, 3.0], [1.0, 1.0]])

    def test_bilinear_interpolation(self):
        values = self.field.evaluate([[0.0, 0.0], [0.5, 1.0], [0.0, -1.0]])
        np.testing.assert_allclose(values, [2.5, 2.0, 2.0])

    def test_unit_outside_the_table(self):
        assert self.field.evaluate([[3.0, 0.0]])[0] == 1.0
        assert not self.field.is_unit and self.field.is_lossless

    @pytest.mark.parametrize("params", [
        {'x': [0.0, 0.0], 'y': [0.0, 1.0], 'values': [[1.0, 1.0], [1.0, 1.0]]},
        {'x': [0.0], 'y': [0.0, 1.0], 'values': [[1.0, 1.0]]},
        {'x': [0.0, 1.0], 'y': [0.0, 1.0], 'values': [[1.0, 1.0]]},
        {'x': [0.0, 1.0], 'y': [0.0, 1.0], 'values': [[1.0, 1.0], [1.0, -2.0]]},
    ])
    def test_invalid_table(self, params):
        with pytest.raises(UserConfigValidationException, match="tabulated"):
            IndexField(kind='tabulated', **params)
