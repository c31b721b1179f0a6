import numpy as np
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import Curve


class TestKiteCurve:
    @pytest.fixture(autouse=True)
    def _get_curve(self):
        self.curve = Curve(kind='kite', scale=0.3, n_nodes=128)

    def test_counter_clockwise_and_unit_normals(self):
        assert self.curve.area > 0.0
        np.testing.assert_allclose(np.hypot(*self.curve.normals.T), 1.0, atol=1e-14)

    def test_non_convex_indentation(self):
        # the kite is indented on the left, curvature changes sign there
        assert np.min(self.curve.curvatures) < 0.0 < np.max(self.curve.curvatures)

    def test_outward_normals(self):
        offset = 0.2 * self.curve.node_spacing
        assert not np.any(self.curve.contains(self.curve.nodes + offset * self.curve.normals))
        assert np.all(self.curve.contains(self.curve.nodes - offset * self.curve.normals))

    def test_invalid_scale(self):
        with pytest.raises(UserConfigValidationException, match="kite scale"):
            Curve(kind='kite', scale=-1.0)
