"""Layer classification of points and volume quadrature of the obstacle.

The obstacle Omega2 is the region enclosed by S1, the bounded layer Omega1
lies between S1 and S0 and Omega0 is everything outside S0.
"""

import logging

import numpy as np
from numpy.polynomial.legendre import leggauss
from raiutils.exceptions import UserConfigValidationException
from scipy.spatial.distance import cdist

from layered_scatter.constants import LayerId, QuadratureRules, Thresholds
from layered_scatter.index_field import IndexField
from layered_scatter.utils.exception import AmbiguousPoint, MeshTooCoarse, SingularGeometry

logger = logging.getLogger(__name__)


def _inside(curve, point):
    """Point-in-curve test, exact near the trace and by winding number elsewhere."""
    distance, t = curve.closest_point(point)
    if distance < Thresholds.INTERFACE_DISTANCE:
        raise AmbiguousPoint(
            "point {0} lies within {1} of a {2} interface".format(
                np.asarray(point).tolist(), Thresholds.INTERFACE_DISTANCE, curve.kind))
    if distance < curve.node_spacing:
        return curve.outward_side(point, t) < 0.0
    return bool(curve.contains(point)[0])


def classify_point(p, s0, s1):
    """Layer containing the point p.

    :param p: 2-vector.
    :param s0: Outer interface S0.
    :param s1: Inner interface S1, enclosed by S0.
    :returns: one of LayerId.Omega0, LayerId.Omega1, LayerId.Omega2.
    :raises AmbiguousPoint: if p is within 1e-12 of either trace.
    """
    p = np.asarray(p, dtype=float)
    inside_s0 = _inside(s0, p)
    inside_s1 = _inside(s1, p)
    if not inside_s0:
        return LayerId.Omega0
    return LayerId.Omega2 if inside_s1 else LayerId.Omega1


def classify_points(points, s0, s1):
    """Vectorised classify_point returning an array of layer ids."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return np.array([classify_point(p, s0, s1) for p in points], dtype=object)


def curve_nodes(c):
    """The N node tuples (position, normal, jacobian) of a curve, in parameter order."""
    return [(c.nodes[i].copy(), c.normals[i].copy(), float(c.jacobians[i])) for i in range(c.n_nodes)]


def winding_number(curve, points):
    """Winding number of the curve around each of the points."""
    return curve.winding_number(points)


def distance_to_curve(curve, point):
    return curve.closest_point(point)[0]


def curves_min_distance(a, b):
    """Minimum distance between the traces of two curves."""
    n_sample = 4 * max(a.n_nodes, b.n_nodes)
    return float(np.min(cdist(a.sample(n_sample), b.sample(n_sample))))


def validate_layered_geometry(s0, s1):
    """Check that the trace of s1 lies strictly inside the region enclosed by s0.

    :raises SingularGeometry: if the curves touch.
    :raises UserConfigValidationException: if s1 is not enclosed by s0.
    """
    gap = curves_min_distance(s0, s1)
    if gap < Thresholds.TOUCHING_DISTANCE:
        raise SingularGeometry("interfaces S0 and S1 touch (distance {0:.3g})".format(gap))
    if not np.all(s0.contains(s1.nodes)):
        raise UserConfigValidationException("inner interface S1 should lie inside the outer interface S0")
    return gap


class VolumeMesh:
    """Quadrature rule on the obstacle Omega2 with the refractive index sampled at its nodes."""

    def __init__(self, nodes, weights, h, n_values, quadrature=QuadratureRules.Cartesian, center=(0.0, 0.0)):
        """Init method

        :param nodes: (M, 2) node positions strictly inside S1.
        :param weights: (M,) positive quadrature weights.
        :param h: Nominal cell size.
        :param n_values: (M,) complex index samples.
        :param quadrature: Rule that generated the nodes, one of QuadratureRules.ALL.
        :param center: Centre of the grid.
        """
        self._nodes = np.asarray(nodes, dtype=float)
        self._weights = np.asarray(weights, dtype=float)
        self._n_values = np.asarray(n_values, dtype=complex)
        self.h = float(h)
        self.quadrature = quadrature
        self.center = np.asarray(center, dtype=float)
        if not (len(self._nodes) == len(self._weights) == len(self._n_values)):
            raise UserConfigValidationException("mesh nodes, weights and n_values should have equal length")
        if np.any(self._weights <= 0):
            raise UserConfigValidationException("mesh weights should be positive")
        bad = (self._n_values.real <= 0) | (self._n_values.imag < 0)
        if np.any(bad):
            raise UserConfigValidationException("refractive index should satisfy Re(n) > 0 and Im(n) >= 0")

    @property
    def nodes(self):
        return self._nodes

    @property
    def weights(self):
        return self._weights

    @property
    def n_values(self):
        return self._n_values

    @property
    def size(self):
        return len(self._nodes)

    @property
    def total_weight(self):
        return float(np.sum(self._weights))

    @property
    def is_unit(self):
        """True when every index sample equals one."""
        return bool(np.all(self._n_values == 1.0))

    @property
    def cell_radius(self):
        """Radius of the disk whose area equals each node's weight."""
        return np.sqrt(self._weights / np.pi)

    def contrast(self, k2):
        """Contrast k2^2 (n - 1) per node."""
        return k2 ** 2 * (self._n_values - 1.0)

    def with_index(self, field):
        """Same nodes and weights with n resampled from another index field."""
        if isinstance(field, dict):
            field = IndexField(**field)
        return VolumeMesh(self._nodes, self._weights, self.h, field.evaluate(self._nodes),
                          self.quadrature, self.center)

    def permuted(self, order):
        """Same rule with its nodes listed in another order."""
        order = np.asarray(order)
        return VolumeMesh(self._nodes[order], self._weights[order], self.h, self._n_values[order],
                          self.quadrature, self.center)


def _cartesian_rule(s1, h):
    extent = s1.bounding_radius
    count = int(np.ceil(extent / h)) + 1
    steps = np.arange(-count, count + 1)
    # quarter-cell shift along x keeps lattice nodes off circles of radius a multiple of h
    gx, gy = np.meshgrid(h * (steps + 0.25), h * steps, indexing='ij')
    candidates = s1.center + np.column_stack((gx.ravel(), gy.ravel()))
    # staircase cells: a node owns its full h^2 cell when it is inside
    nodes = candidates[s1.contains(candidates)]
    return nodes, np.full(len(nodes), h * h)


def _polar_rule(s1, h):
    extent = s1.bounding_radius
    n_radial = max(int(np.ceil(extent / h)), 2)
    n_angular = max(int(np.ceil(2.0 * np.pi * extent / h)), 8)
    n_angular += n_angular % 2
    s, ws = leggauss(n_radial)
    s, ws = 0.5 * (s + 1.0), 0.5 * ws
    t = 2.0 * np.pi * np.arange(n_angular) / n_angular
    rel, d1, _ = s1._shape(t)
    cross = np.abs(rel[:, 0] * d1[:, 1] - rel[:, 1] * d1[:, 0])
    nodes = s1.center + (s[:, None, None] * rel[None, :, :]).reshape(-1, 2)
    weights = (s[:, None] * ws[:, None] * cross[None, :] * (2.0 * np.pi / n_angular)).ravel()
    return nodes, weights


def build_volume_mesh(s1, h, n, quadrature=QuadratureRules.Cartesian):
    """Quadrature grid covering the obstacle enclosed by s1.

    The Cartesian rule keeps the nodes of the uniform grid
    c + h (i + 1/4, j) that fall inside s1 and gives each the full cell
    weight h^2; its area error is O(h). The polar rule maps a
    Gauss-Legendre by trapezoid tensor grid through x = c + s (x(t) - c),
    which needs s1 star-shaped with respect to its centre and integrates
    smooth integrands spectrally.

    :param s1: Interface enclosing the obstacle.
    :param h: Cell size > 0.
    :param n: IndexField, or a dictionary of IndexField parameters.
    :param quadrature: One of QuadratureRules.ALL.
    :returns: VolumeMesh.
    :raises MeshTooCoarse: if fewer than 25 nodes fall inside s1.
    """
    if h is None or not np.isfinite(h) or h <= 0:
        raise UserConfigValidationException("mesh size h should be a positive number, got {0}".format(h))
    if isinstance(n, dict):
        n = IndexField(**n)
    if quadrature == QuadratureRules.Cartesian:
        nodes, weights = _cartesian_rule(s1, h)
    elif quadrature == QuadratureRules.Polar:
        nodes, weights = _polar_rule(s1, h)
    else:
        raise UserConfigValidationException(
            "quadrature should be one of {0}, got {1}".format(QuadratureRules.ALL, quadrature))
    if len(nodes) < Thresholds.MIN_MESH_NODES:
        raise MeshTooCoarse("only {0} mesh nodes inside S1 at h={1}, need at least {2}".format(
            len(nodes), h, Thresholds.MIN_MESH_NODES))
    logger.debug(f"{quadrature} volume mesh with {len(nodes)} nodes, total weight {np.sum(weights):.6g}")
    return VolumeMesh(nodes, weights, h, n.evaluate(nodes), quadrature, s1.center)
