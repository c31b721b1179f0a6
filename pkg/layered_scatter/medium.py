"""Medium constants, incident fields and the interface data they induce."""

import logging
from abc import ABC, abstractmethod

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import IncidentKinds, LayerId
from layered_scatter.geometry import classify_point
from layered_scatter.index_field import IndexField
from layered_scatter.index_interfaces.base_index_field import _BaseIndexField
from layered_scatter.specialfn import hankel1

logger = logging.getLogger(__name__)

_UNIT_TOLERANCE = 1e-14


class MediumConfig:
    """Wavenumbers k0, k1, k2, transmission constants lambda0, lambda1 and the index of the obstacle.

    The transmission conditions read u - v = f, du/dnu - lambda0 dv/dnu = g
    on S0 and v - w = p, dv/dnu - lambda1 dw/dnu = q on S1.
    """

    POSITIVE_FIELDS = ['k0', 'k1', 'k2', 'lambda0', 'lambda1']

    def __init__(self, k0, k1, k2, lambda0=1.0, lambda1=1.0, index_field=None):
        """Init method

        :param k0: Wavenumber of the exterior Omega0.
        :param k1: Wavenumber of the layer Omega1.
        :param k2: Background wavenumber of the obstacle Omega2.
        :param lambda0: Transmission constant across S0.
        :param lambda1: Transmission constant across S1.
        :param index_field: IndexField, a dictionary of IndexField parameters or None for n = 1.
        """
        values = {'k0': k0, 'k1': k1, 'k2': k2, 'lambda0': lambda0, 'lambda1': lambda1}
        for name in self.POSITIVE_FIELDS:
            value = values[name]
            if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)) or \
                    not np.isfinite(value) or value <= 0:
                raise UserConfigValidationException("{0} should be a positive number, got {1}".format(name, value))
            setattr(self, name, float(value))
        if index_field is None:
            index_field = IndexField(kind='constant', value=1.0)
        elif isinstance(index_field, dict):
            index_field = IndexField(**index_field)
        elif not isinstance(index_field, _BaseIndexField):
            raise UserConfigValidationException("index_field should be an IndexField or a dictionary")
        self.index_field = index_field

    @property
    def lam(self):
        """Scaling 2 / (lambda0 + 1) of the S0 rows."""
        return 2.0 / (self.lambda0 + 1.0)

    @property
    def mu(self):
        """Scaling 2 / (lambda1 + 1) of the S1 rows."""
        return 2.0 / (self.lambda1 + 1.0)

    def wavenumber(self, layer):
        if layer not in LayerId.ALL:
            raise UserConfigValidationException("layer should be one of {0}, got {1}".format(LayerId.ALL, layer))
        return {LayerId.Omega0: self.k0, LayerId.Omega1: self.k1, LayerId.Omega2: self.k2}[layer]

    def with_index(self, index_field):
        return MediumConfig(self.k0, self.k1, self.k2, self.lambda0, self.lambda1, index_field)

    def to_params(self):
        params = {name: getattr(self, name) for name in self.POSITIVE_FIELDS}
        params['index_field'] = self.index_field.to_params()
        return params


class IncidentField(ABC):
    """Base class of the incident waves; amplitude is a complex factor on the whole field."""

    kind = None

    def __init__(self, amplitude=1.0):
        amplitude = complex(amplitude)
        if not np.isfinite(amplitude):
            raise UserConfigValidationException("incident amplitude should be finite")
        self.amplitude = amplitude

    @abstractmethod
    def value(self, points, k):
        """Field values at (P, 2) points in a layer of wavenumber k."""
        pass

    @abstractmethod
    def normal_derivative(self, points, normals, k):
        pass

    @abstractmethod
    def scaled(self, factor):
        """The same incident wave with its amplitude multiplied by factor."""
        pass

    @abstractmethod
    def to_params(self):
        pass


class PlaneWave(IncidentField):
    """u^i(x) = amplitude * exp(i k0 x . d) with a unit direction d."""

    kind = IncidentKinds.PlaneWave

    def __init__(self, direction=(1.0, 0.0), amplitude=1.0):
        super().__init__(amplitude)
        direction = np.asarray(direction, dtype=float)
        if direction.shape != (2,) or abs(np.hypot(*direction) - 1.0) > _UNIT_TOLERANCE:
            raise UserConfigValidationException(
                "plane wave direction should be a unit 2-vector, got {0}".format(direction.tolist()))
        self.direction = direction

    @classmethod
    def from_angle(cls, angle, amplitude=1.0):
        direction = np.array([np.cos(angle), np.sin(angle)])
        return cls(direction / np.hypot(*direction), amplitude)

    def value(self, points, k):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return self.amplitude * np.exp(1j * k * (points @ self.direction))

    def normal_derivative(self, points, normals, k):
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        return 1j * k * (normals @ self.direction) * self.value(points, k)

    def scaled(self, factor):
        return PlaneWave(self.direction, self.amplitude * factor)

    def to_params(self):
        return {'kind': self.kind, 'direction': self.direction.tolist(),
                'amplitude': [self.amplitude.real, self.amplitude.imag]}


class PointSource(IncidentField):
    """u^i(x) = amplitude * (i/4) H0(k |x - z|) with k the wavenumber of the source layer."""

    kind = IncidentKinds.PointSource

    def __init__(self, source, layer=LayerId.Omega0, amplitude=1.0):
        super().__init__(amplitude)
        source = np.asarray(source, dtype=float)
        if source.shape != (2,) or not np.all(np.isfinite(source)):
            raise UserConfigValidationException("point source location should be a finite 2-vector")
        if layer not in LayerId.SOURCE_LAYERS:
            raise UserConfigValidationException(
                "point source layer should be one of {0}, got {1}".format(LayerId.SOURCE_LAYERS, layer))
        self.source = source
        self.layer = layer

    def _offsets(self, points):
        rel = np.atleast_2d(np.asarray(points, dtype=float)) - self.source
        return rel, np.hypot(rel[:, 0], rel[:, 1])

    def value(self, points, k):
        _, r = self._offsets(points)
        return self.amplitude * 0.25j * hankel1(0, k * r)

    def normal_derivative(self, points, normals, k):
        rel, r = self._offsets(points)
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        projection = np.sum(normals * rel, axis=1) / r
        return -self.amplitude * 0.25j * k * hankel1(1, k * r) * projection

    def scaled(self, factor):
        return PointSource(self.source, self.layer, self.amplitude * factor)

    def to_params(self):
        return {'kind': self.kind, 'source': self.source.tolist(), 'layer': self.layer,
                'amplitude': [self.amplitude.real, self.amplitude.imag]}


def incident_from_params(params):
    """Build a PlaneWave or PointSource from a configuration dictionary."""
    params = dict(params)
    kind = params.pop('kind', IncidentKinds.PlaneWave)
    amplitude = params.pop('amplitude', [1.0, 0.0])
    if isinstance(amplitude, (list, tuple)):
        amplitude = complex(*amplitude)
    if kind == IncidentKinds.PlaneWave:
        if 'angle' in params:
            return PlaneWave.from_angle(params['angle'], amplitude)
        return PlaneWave(params.get('direction', (1.0, 0.0)), amplitude)
    elif kind == IncidentKinds.PointSource:
        return PointSource(params.get('source'), params.get('layer', LayerId.Omega0), amplitude)
    raise UserConfigValidationException(
        "incident kind should be one of {0}, got {1}".format(IncidentKinds.ALL, kind))


class TransmissionData:
    """Jumps f, g on the S0 nodes and p, q on the S1 nodes."""

    def __init__(self, f, g, p, q):
        self.f = np.asarray(f, dtype=complex)
        self.g = np.asarray(g, dtype=complex)
        self.p = np.asarray(p, dtype=complex)
        self.q = np.asarray(q, dtype=complex)
        if self.f.shape != self.g.shape or self.p.shape != self.q.shape:
            raise UserConfigValidationException("f/g and p/q should have matching lengths")

    def check_lengths(self, s0, s1):
        if len(self.f) != s0.n_nodes or len(self.p) != s1.n_nodes:
            raise UserConfigValidationException(
                "transmission data lengths ({0}, {1}) do not match the node counts ({2}, {3})".format(
                    len(self.f), len(self.p), s0.n_nodes, s1.n_nodes))

    def perturbed(self, f=None, g=None, p=None, q=None):
        """Data with the given additive perturbations."""
        return TransmissionData(self.f if f is None else self.f + f,
                                self.g if g is None else self.g + g,
                                self.p if p is None else self.p + p,
                                self.q if q is None else self.q + q)


def incident_to_data(inc, config, s0, s1):
    """Nodal transmission data induced by an incident field.

    For a plane wave or a source in Omega0 the unknown u is the scattered
    field and f = -u^i, g = -du^i/dnu, p = q = 0. For a source in Omega1
    the unknown v is the scattered part of the layer field:
    f = u^i, g = lambda0 du^i/dnu, p = -u^i and q = -du^i/dnu.

    :raises UserConfigValidationException: if a point source is not in its declared layer.
    :raises AmbiguousPoint: if a point source sits on an interface.
    """
    if isinstance(inc, PointSource):
        found = classify_point(inc.source, s0, s1)
        if found != inc.layer:
            raise UserConfigValidationException(
                "point source {0} lies in {1}, not in the declared layer {2}".format(
                    inc.source.tolist(), found, inc.layer))
    elif not isinstance(inc, PlaneWave):
        raise UserConfigValidationException("incident field should be a PlaneWave or a PointSource")

    if isinstance(inc, PlaneWave) or inc.layer == LayerId.Omega0:
        k = config.k0
        f = -inc.value(s0.nodes, k)
        g = -inc.normal_derivative(s0.nodes, s0.normals, k)
        p = np.zeros(s1.n_nodes, dtype=complex)
        q = np.zeros(s1.n_nodes, dtype=complex)
    else:
        k = config.k1
        f = inc.value(s0.nodes, k)
        g = config.lambda0 * inc.normal_derivative(s0.nodes, s0.normals, k)
        p = -inc.value(s1.nodes, k)
        q = -inc.normal_derivative(s1.nodes, s1.normals, k)
    logger.debug(f"{inc.kind} data on S0 ({s0.n_nodes} nodes) and S1 ({s1.n_nodes} nodes)")
    return TransmissionData(f, g, p, q)
