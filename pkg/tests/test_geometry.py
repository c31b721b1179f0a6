import numpy as np
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import Curve
from layered_scatter.constants import LayerId, QuadratureRules
from layered_scatter.geometry import (build_volume_mesh, classify_point, classify_points, curve_nodes,
                                      curves_min_distance, distance_to_curve, validate_layered_geometry,
                                      winding_number)
from layered_scatter.utils.exception import AmbiguousPoint, MeshTooCoarse, SingularGeometry


@pytest.fixture(scope='module')
def concentric_curves():
    return Curve(kind='circle', radius=1.5, n_nodes=64), Curve(kind='circle', radius=0.7, n_nodes=64)


class TestClassifyPoint:
    @pytest.mark.parametrize("point, layer", [
        ([0.0, 0.0], LayerId.Omega2),
        ([0.69, 0.0], LayerId.Omega2),
        ([1.0, 0.0], LayerId.Omega1),
        ([0.0, -1.49], LayerId.Omega1),
        ([2.5, 0.0], LayerId.Omega0),
        ([1.2, 1.2], LayerId.Omega0),
    ])
    def test_layers(self, concentric_curves, point, layer):
        assert classify_point(point, *concentric_curves) == layer

    def test_points_between_nodes_near_the_trace(self, concentric_curves):
        # half-way between two nodes, just inside and just outside S1
        t = np.pi / 64
        direction = np.array([np.cos(t), np.sin(t)])
        assert classify_point((0.7 - 1e-6) * direction, *concentric_curves) == LayerId.Omega2
        assert classify_point((0.7 + 1e-6) * direction, *concentric_curves) == LayerId.Omega1

    @pytest.mark.parametrize("point", [[1.5, 0.0], [0.0, 0.7], [0.7 * np.cos(1.0), 0.7 * np.sin(1.0)]])
    def test_points_on_an_interface(self, concentric_curves, point):
        with pytest.raises(AmbiguousPoint):
            classify_point(point, *concentric_curves)

    def test_vectorised(self, concentric_curves):
        layers = classify_points([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]], *concentric_curves)
        assert layers.tolist() == [LayerId.Omega2, LayerId.Omega1, LayerId.Omega0]


class TestLayeredGeometry:
    def test_winding_number(self, concentric_curves):
        s0 = concentric_curves[0]
        numbers = winding_number(s0, [[0.0, 0.0], [1.4, 0.1], [1.6, 0.0], [-5.0, 2.0]])
        assert np.allclose(numbers, [1.0, 1.0, 0.0, 0.0], atol=1e-6)

    @pytest.mark.parametrize("point, distance", [([3.0, 0.0], 1.5), ([0.0, 0.0], 1.5), ([0.0, 1.0], 0.5)])
    def test_distance_to_curve(self, concentric_curves, point, distance):
        assert distance_to_curve(concentric_curves[0], point) == pytest.approx(distance, abs=1e-12)

    def test_min_distance(self, concentric_curves):
        assert curves_min_distance(*concentric_curves) == pytest.approx(0.8, rel=1e-12)
        assert validate_layered_geometry(*concentric_curves) == pytest.approx(0.8, rel=1e-12)

    def test_touching_curves(self):
        s0 = Curve(kind='circle', radius=1.0, n_nodes=32)
        s1 = Curve(kind='circle', radius=0.5, center=[0.5, 0.0], n_nodes=32)
        with pytest.raises(SingularGeometry):
            validate_layered_geometry(s0, s1)

    def test_inner_curve_outside(self):
        s0 = Curve(kind='circle', radius=1.0, n_nodes=32)
        s1 = Curve(kind='circle', radius=0.5, center=[3.0, 0.0], n_nodes=32)
        with pytest.raises(UserConfigValidationException, match="should lie inside"):
            validate_layered_geometry(s0, s1)

    def test_curve_nodes(self, concentric_curves):
        nodes = curve_nodes(concentric_curves[1])
        assert len(nodes) == 64
        position, normal, jacobian = nodes[16]
        np.testing.assert_allclose(position, [0.0, 0.7], atol=1e-15)
        np.testing.assert_allclose(normal, [0.0, 1.0], atol=1e-15)
        assert jacobian == pytest.approx(0.7)


class TestVolumeMesh:
    def test_cartesian_area(self, concentric_curves):
        mesh = build_volume_mesh(concentric_curves[1], 0.14, {'kind': 'constant', 'value': 1.0})
        assert mesh.quadrature == QuadratureRules.Cartesian
        assert mesh.total_weight == pytest.approx(np.pi * 0.49, rel=0.1)
        assert np.all(concentric_curves[1].contains(mesh.nodes))
        np.testing.assert_array_equal(mesh.weights, 0.14 ** 2)

    def test_cartesian_area_error_is_small_on_fine_grids(self, concentric_curves):
        errors = [abs(build_volume_mesh(concentric_curves[1], h, {'kind': 'constant'}).total_weight - np.pi * 0.49)
                  for h in (0.02, 0.01)]
        assert errors[0] < 0.04
        assert errors[1] < 0.02

    def test_polar_rule_is_spectral_for_smooth_integrands(self):
        ellipse = Curve(kind='ellipse', semi_axes=[0.8, 0.5], n_nodes=64)
        mesh = build_volume_mesh(ellipse, 0.1, {'kind': 'constant'}, QuadratureRules.Polar)
        assert mesh.total_weight == pytest.approx(np.pi * 0.4, rel=1e-12)
        # int x^2 over the ellipse is pi a^3 b / 4
        second_moment = np.sum(mesh.nodes[:, 0] ** 2 * mesh.weights)
        assert second_moment == pytest.approx(np.pi * 0.8 ** 3 * 0.5 / 4.0, rel=1e-10)

    def test_index_sampling_and_resampling(self, concentric_curves):
        mesh = build_volume_mesh(concentric_curves[1], 0.1, {'kind': 'radial_bump', 'radius': 0.5,
                                                             'amplitude': 0.4})
        assert not mesh.is_unit
        assert np.max(mesh.n_values.real) <= 1.4
        unit = mesh.with_index({'kind': 'constant', 'value': 1.0})
        assert unit.is_unit
        np.testing.assert_array_equal(unit.nodes, mesh.nodes)
        np.testing.assert_array_equal(unit.contrast(2.0), 0.0)
        np.testing.assert_allclose(mesh.cell_radius, 0.1 / np.sqrt(np.pi))

    def test_permuted(self, concentric_curves):
        mesh = build_volume_mesh(concentric_curves[1], 0.1, {'kind': 'radial_bump', 'radius': 0.5,
                                                             'amplitude': 0.4})
        order = np.random.RandomState(3).permutation(mesh.size)
        permuted = mesh.permuted(order)
        np.testing.assert_array_equal(permuted.nodes, mesh.nodes[order])
        np.testing.assert_array_equal(permuted.n_values, mesh.n_values[order])

    def test_too_coarse(self, concentric_curves):
        with pytest.raises(MeshTooCoarse):
            build_volume_mesh(concentric_curves[1], 0.5, {'kind': 'constant'})

    @pytest.mark.parametrize("h", [0.0, -0.1, None, np.nan])
    def test_invalid_mesh_size(self, concentric_curves, h):
        with pytest.raises(UserConfigValidationException, match="mesh size"):
            build_volume_mesh(concentric_curves[1], h, {'kind': 'constant'})

    def test_unknown_quadrature(self, concentric_curves):
        with pytest.raises(UserConfigValidationException, match="quadrature"):
            build_volume_mesh(concentric_curves[1], 0.1, {'kind': 'constant'}, 'hexagonal')
