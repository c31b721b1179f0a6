"""Module containing the base class for closed parametric boundary curves."""

import logging
from abc import ABC, abstractmethod

import numpy as np
from raiutils.exceptions import UserConfigValidationException
from scipy.optimize import minimize_scalar

from layered_scatter.utils.exception import SingularGeometry

logger = logging.getLogger(__name__)

_DEFAULT_NODES = 64
_MIN_POLYGON_NODES = 2048
_MAX_POLYGON_NODES = 2 ** 14
_WINDING_CHUNK = 512


def winding_numbers(vertices, points):
    """Winding numbers of a closed polygon around each point.

    :param vertices: (V, 2) polygon vertices in order, the closing edge is implied.
    :param points: (P, 2) query points.
    :returns: (P,) real winding numbers (integers up to rounding away from the polygon).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    result = np.empty(len(points))
    for start in range(0, len(points), _WINDING_CHUNK):
        block = points[start:start + _WINDING_CHUNK]
        rel = vertices[None, :, :] - block[:, None, :]
        angles = np.arctan2(rel[..., 1], rel[..., 0])
        steps = np.diff(np.concatenate([angles, angles[:, :1]], axis=1), axis=1)
        steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
        result[start:start + _WINDING_CHUNK] = steps.sum(axis=1) / (2.0 * np.pi)
    return result


class _BaseCurve(ABC):
    """A closed C2 curve x(t), t in [0, 2pi), traversed counter-clockwise.

    Nodes sit at t_i = 2 pi i / N with N even. The outward unit normal is
    (x2', -x1') / |x'|.
    """

    kind = None

    def _validate_and_set_common(self, params):
        """Validate and set the centre and node count shared by every curve kind."""
        center = np.asarray(params.get('center', (0.0, 0.0)), dtype=float)
        if center.shape != (2,) or not np.all(np.isfinite(center)):
            raise UserConfigValidationException("center should be a finite 2-vector, got {0}".format(
                params.get('center')))
        n_nodes = params.get('n_nodes', _DEFAULT_NODES)
        if isinstance(n_nodes, bool) or not isinstance(n_nodes, (int, np.integer)):
            raise UserConfigValidationException("n_nodes should be an integer, got {0}".format(n_nodes))
        if n_nodes < 4 or n_nodes % 2 != 0:
            raise UserConfigValidationException(
                "n_nodes should be an even integer >= 4, got {0}".format(n_nodes))
        self.center = center
        self.n_nodes = int(n_nodes)

    @abstractmethod
    def __init__(self, params):
        """The init method needs to be implemented by the inheriting classes."""
        pass

    def _shape(self, t):
        """Return x(t) - center, x'(t) and x''(t), each of shape (len(t), 2)."""
        raise NotImplementedError("{0} does not implement _shape".format(type(self).__name__))

    def shape_params(self):
        """Kind specific parameters as a JSON-friendly dictionary."""
        raise NotImplementedError("{0} does not implement shape_params".format(type(self).__name__))

    def _discretize(self):
        """Precompute the node data of the trapezoid rule."""
        t = 2.0 * np.pi * np.arange(self.n_nodes) / self.n_nodes
        rel, d1, d2 = self._shape(t)
        jacobians = np.hypot(d1[:, 0], d1[:, 1])
        if np.any(jacobians <= 0.0):
            raise SingularGeometry("{0} curve has a vanishing speed |x'(t)| at some node".format(self.kind))

        self.parameters = t
        self.nodes = self.center + rel
        self.derivatives = d1
        self.second_derivatives = d2
        self.jacobians = jacobians
        self.normals = np.column_stack((d1[:, 1], -d1[:, 0])) / jacobians[:, None]
        self.curvatures = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / jacobians ** 3
        self.weights = (2.0 * np.pi / self.n_nodes) * jacobians
        self.area = 0.5 * np.sum(rel[:, 0] * d1[:, 1] - rel[:, 1] * d1[:, 0]) * 2.0 * np.pi / self.n_nodes
        if self.area <= 0.0:
            raise UserConfigValidationException(
                "{0} curve should be parametrised counter-clockwise".format(self.kind))
        logger.debug(f"{self.kind} curve discretised with N={self.n_nodes}, area={self.area:.6g}")

    def to_params(self):
        """Parameters that rebuild this curve through the Curve front class."""
        params = {'kind': self.kind, 'center': self.center.tolist(), 'n_nodes': self.n_nodes}
        params.update(self.shape_params())
        return params

    def resampled(self, n_nodes):
        """The same geometry discretised with a different (even) node count."""
        params = self.to_params()
        params['n_nodes'] = n_nodes
        return type(self)(params)

    def translated(self, offset):
        """The same curve rigidly shifted by offset."""
        params = self.to_params()
        params['center'] = (self.center + np.asarray(offset, dtype=float)).tolist()
        return type(self)(params)

    @property
    def node_spacing(self):
        """Largest arc length between consecutive nodes."""
        return float(np.max(self.weights))

    def sample(self, n_points):
        """Trace points at n_points equispaced parameters."""
        t = 2.0 * np.pi * np.arange(n_points) / n_points
        rel, _, _ = self._shape(t)
        return self.center + rel

    def sample_with_normals(self, n_points):
        t = 2.0 * np.pi * np.arange(n_points) / n_points
        rel, d1, _ = self._shape(t)
        jac = np.hypot(d1[:, 0], d1[:, 1])
        return self.center + rel, np.column_stack((d1[:, 1], -d1[:, 0])) / jac[:, None]

    @property
    def bounding_radius(self):
        """Largest distance from the centre to the trace."""
        rel = self.sample(max(8 * self.n_nodes, _MIN_POLYGON_NODES)) - self.center
        return float(np.max(np.hypot(rel[:, 0], rel[:, 1])))

    def winding_number(self, points):
        """Winding number of the curve around each point.

        The trace is replaced by a fine polygon which is refined by doubling
        wherever the result is more than 0.1 away from an integer.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        n_poly = max(8 * self.n_nodes, _MIN_POLYGON_NODES)
        result = winding_numbers(self.sample(n_poly), points)
        ambiguous = np.abs(result - np.round(result)) > 0.1
        while np.any(ambiguous) and n_poly < _MAX_POLYGON_NODES:
            n_poly *= 2
            result[ambiguous] = winding_numbers(self.sample(n_poly), points[ambiguous])
            ambiguous = np.abs(result - np.round(result)) > 0.1
        return result

    def contains(self, points):
        """Boolean mask of the points enclosed by the curve."""
        return np.round(self.winding_number(points)).astype(int) != 0

    def closest_point(self, point):
        """Distance from point to the trace and the parameter attaining it."""
        point = np.asarray(point, dtype=float)
        n_sample = max(8 * self.n_nodes, _MIN_POLYGON_NODES)
        trace = self.sample(n_sample)
        start = int(np.argmin(np.sum((trace - point) ** 2, axis=1)))
        dt = 2.0 * np.pi / n_sample
        t0 = 2.0 * np.pi * start / n_sample

        def squared_distance(t):
            rel, _, _ = self._shape(np.array([t]))
            return float(np.sum((self.center + rel[0] - point) ** 2))

        opt = minimize_scalar(squared_distance, bounds=(t0 - dt, t0 + dt), method='bounded',
                              options={'xatol': 1e-14})
        t = float(opt.x)
        # Newton polish of (x(t) - p) . x'(t) = 0
        for _ in range(3):
            rel, d1, d2 = self._shape(np.array([t]))
            offset = self.center + rel[0] - point
            slope = np.dot(d1[0], d1[0]) + np.dot(offset, d2[0])
            if slope <= 0.0:
                break
            step = np.dot(offset, d1[0]) / slope
            if abs(step) > dt:
                break
            t -= step
        distance = np.sqrt(squared_distance(t))
        if distance > np.sqrt(opt.fun):
            return float(np.sqrt(opt.fun)), float(opt.x % (2.0 * np.pi))
        return float(distance), float(t % (2.0 * np.pi))

    def distance(self, points):
        """Distances from each point to the trace."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return np.array([self.closest_point(p)[0] for p in points])

    def outward_side(self, point, t):
        """Sign of (point - x(t)) . nu(t): positive outside near the trace."""
        rel, d1, _ = self._shape(np.array([t]))
        normal = np.array([d1[0, 1], -d1[0, 0]])
        return float(np.dot(np.asarray(point, dtype=float) - self.center - rel[0], normal))
