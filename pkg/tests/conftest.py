import numpy as np
import pytest

from layered_scatter import Curve, PlaneWave, TransmissionSolver
from layered_scatter.oracle import ConcentricConfig
from layered_scatter.utils import helpers


@pytest.fixture(scope='session')
def unit_circle():
    return Curve(kind='circle', radius=1.0, n_nodes=64)


@pytest.fixture(scope='session')
def benchmark_setup():
    return helpers.build_setup(helpers.benchmark_config_dict(), n_nodes=128, h=0.04)


@pytest.fixture(scope='session')
def benchmark_solver(benchmark_setup):
    config, s0, s1, mesh = benchmark_setup
    return TransmissionSolver(config, s0, s1, mesh)


@pytest.fixture(scope='session')
def benchmark_solution(benchmark_solver):
    return benchmark_solver.solve(PlaneWave((1.0, 0.0)))


@pytest.fixture(scope='session')
def concentric_benchmark(benchmark_setup):
    config = benchmark_setup[0]
    return ConcentricConfig(1.5, 0.7, config)


@pytest.fixture(scope='session')
def matched_setup():
    return helpers.build_setup(helpers.matched_media_config_dict(), n_nodes=64, h=0.1)


@pytest.fixture(scope='session')
def matched_solver(matched_setup):
    config, s0, s1, mesh = matched_setup
    return TransmissionSolver(config, s0, s1, mesh)


@pytest.fixture(scope='session')
def observation_angles():
    return 2.0 * np.pi * np.arange(360) / 360
