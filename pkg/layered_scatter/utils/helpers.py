"""
This module contains helper functions that build the reference configurations used in the
examples and the test-suite.
"""
import copy

from layered_scatter.curve import Curve
from layered_scatter.geometry import build_volume_mesh
from layered_scatter.medium import MediumConfig

_BENCHMARK = {
    'medium': {'k0': 1.0, 'k1': 1.5, 'k2': 2.5, 'lambda0': 0.8, 'lambda1': 1.3},
    's0': {'kind': 'circle', 'radius': 1.5},
    's1': {'kind': 'circle', 'radius': 0.7},
    'index_field': {'kind': 'constant', 'value': 1.0},
}

_MATCHED_MEDIA = {
    'medium': {'k0': 1.0, 'k1': 1.0, 'k2': 1.0, 'lambda0': 1.0, 'lambda1': 1.0},
    's0': {'kind': 'circle', 'radius': 1.5},
    's1': {'kind': 'circle', 'radius': 0.7},
    'index_field': {'kind': 'constant', 'value': 1.0},
}

# n = 1 + 0.4 exp(1 - 1/(1 - (r/0.5)^2)) for r < 0.5
_TRANSPARENT_BUMP = {
    'medium': {'k0': 1.0, 'k1': 1.0, 'k2': 1.0, 'lambda0': 1.0, 'lambda1': 1.0},
    's0': {'kind': 'circle', 'radius': 1.5},
    's1': {'kind': 'circle', 'radius': 0.7},
    'index_field': {'kind': 'radial_bump', 'center': [0.0, 0.0], 'radius': 0.5, 'amplitude': 0.4},
}


def benchmark_config_dict():
    """Concentric circles 1.5 / 0.7 with k = 1 / 1.5 / 2.5, lambda = 0.8 / 1.3 and n = 1."""
    return copy.deepcopy(_BENCHMARK)


def matched_media_config_dict():
    return copy.deepcopy(_MATCHED_MEDIA)


def transparent_bump_config_dict():
    """Transparent interfaces around a smooth compactly supported bump in the index."""
    return copy.deepcopy(_TRANSPARENT_BUMP)


def build_setup(config_dict, n_nodes=128, h=0.04, quadrature='cartesian', mesh=True):
    """Build (MediumConfig, S0, S1, VolumeMesh or None) from one of the dictionaries above.

    :param config_dict: Dictionary with medium, s0, s1 and index_field entries.
    :param n_nodes: Node count of both curves.
    :param h: Volume mesh size.
    :param mesh: Whether to build the volume mesh.
    """
    config = MediumConfig(index_field=config_dict['index_field'], **config_dict['medium'])
    s0 = Curve(n_nodes=n_nodes, **config_dict['s0'])
    s1 = Curve(n_nodes=n_nodes, **config_dict['s1'])
    volume_mesh = build_volume_mesh(s1, h, config.index_field, quadrature) if mesh else None
    return config, s0, s1, volume_mesh


def run_config_dict(config_dict, **overrides):
    """A complete command-line run configuration around one of the dictionaries above."""
    run = copy.deepcopy(config_dict)
    run['version'] = '1.0'
    run.update(copy.deepcopy(overrides))
    return run
