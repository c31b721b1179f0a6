import numpy as np
import pandas as pd
import pytest
from raiutils.exceptions import UserConfigValidationException

from layered_scatter import Curve, PlaneWave, TransmissionSolver
from layered_scatter.check_report import CheckReport
from layered_scatter.constants import CheckNames
from layered_scatter.geometry import build_volume_mesh, classify_point
from layered_scatter.oracle import interior_bessel_field, ls_reference, series_far_field
from layered_scatter.utils import helpers
from layered_scatter.utils.exception import AmbiguousPoint
from layered_scatter.verify import (check_energy, check_mixed_reciprocity, check_orthogonality_identity,
                                    check_reciprocity, completeness_study, convergence_study, decide,
                                    layer_point, nested_directions, run_checks)


class TestNestedDirections:
    def test_prefixes_are_equispaced(self):
        directions = nested_directions(8)
        angles = np.mod(np.arctan2(directions[:, 1], directions[:, 0]), 2.0 * np.pi)
        for prefix in [1, 2, 4, 8]:
            expected = 2.0 * np.pi * np.arange(prefix) / prefix
            assert np.allclose(np.sort(angles[:prefix]), expected, atol=1e-12)

    def test_unit_length(self):
        assert np.allclose(np.hypot(*nested_directions(32).T), 1.0)
        assert np.allclose(nested_directions(1), [[1.0, 0.0]])

    @pytest.mark.parametrize("count", [0, 3, 12])
    def test_count_should_be_power_of_two(self, count):
        with pytest.raises(UserConfigValidationException, match="power of two"):
            nested_directions(count)


class TestMixedReciprocity:
    @pytest.mark.parametrize("z, xhat, layer", [
        ((2.5, 0.0), (0.0, 1.0), 'omega0'),
        ((1.0, 0.2), (1.0, 0.0), 'omega1'),
    ])
    def test_benchmark(self, benchmark_setup, benchmark_solver, z, xhat, layer):
        config, s0, s1, mesh = benchmark_setup
        report = check_mixed_reciprocity(config, s0, s1, mesh, z, xhat, solver=benchmark_solver)
        assert report.name == CheckNames.MixedReciprocity
        assert report.parameters['layer'] == layer
        assert report.discrepancy <= 1e-5
        assert report.passed

    @pytest.mark.parametrize("z, xhat", [
        ((2.5, 0.0), (0.0, 1.0)),
        ((1.0, 0.2), (1.0, 0.0)),
    ])
    def test_discrepancy_shrinks_with_refinement(self, z, xhat):
        discrepancies = []
        for n_nodes in [32, 64]:
            config, s0, s1, mesh = helpers.build_setup(helpers.benchmark_config_dict(), n_nodes=n_nodes, h=0.1)
            discrepancies.append(check_mixed_reciprocity(config, s0, s1, mesh, z, xhat).discrepancy)
        assert discrepancies[1] <= discrepancies[0] / 4.0

    def test_matched_media(self, matched_setup, matched_solver):
        config, s0, s1, mesh = matched_setup
        report = check_mixed_reciprocity(config, s0, s1, mesh, (3.0, 1.0), (0.6, 0.8), solver=matched_solver)
        assert report.discrepancy <= 1e-10

    def test_source_on_interface(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(AmbiguousPoint):
            check_mixed_reciprocity(config, s0, s1, mesh, (1.5, 0.0), (1.0, 0.0), solver=benchmark_solver)

    def test_source_in_obstacle(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="Omega0 or Omega1"):
            check_mixed_reciprocity(config, s0, s1, mesh, (0.1, 0.0), (1.0, 0.0), solver=benchmark_solver)


class TestReciprocity:
    def test_benchmark(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        report = check_reciprocity(config, s0, s1, mesh, nested_directions(8), solver=benchmark_solver)
        assert report.discrepancy <= 1e-6
        assert report.details['max_abs_far_field'] > 0.0

    def test_builds_solver_when_missing(self, matched_setup, mocker):
        config, s0, s1, mesh = matched_setup
        spy = mocker.spy(TransmissionSolver, '__init__')
        check_reciprocity(config, s0, s1, mesh, nested_directions(2))
        assert spy.call_count == 1

    def test_single_direction(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="two directions"):
            check_reciprocity(config, s0, s1, mesh, [(1.0, 0.0)], solver=benchmark_solver)


class TestEnergy:
    @pytest.mark.parametrize("radius", [3.0, 5.0])
    def test_lossless_flux_vanishes(self, benchmark_setup, benchmark_solver, radius):
        config, s0, s1, mesh = benchmark_setup
        report = check_energy(config, s0, s1, mesh, PlaneWave((0.0, 1.0)), radius, solver=benchmark_solver)
        assert report.details['lossless']
        assert report.details['rhs'] == 0.0
        assert report.tolerance == 1e-6
        assert report.parameters['R'] == radius
        assert report.passed

    @pytest.mark.slow
    def test_lossy_bump(self):
        config_dict = helpers.benchmark_config_dict()
        config_dict['index_field'] = {'kind': 'radial_bump', 'center': [0.0, 0.0], 'radius': 0.6,
                                      'amplitude': 0.5, 'amplitude_imag': 0.3}
        config, s0, s1, mesh = helpers.build_setup(config_dict, n_nodes=128, h=0.02)
        solver = TransmissionSolver(config, s0, s1, mesh)
        report = check_energy(config, s0, s1, mesh, PlaneWave((1.0, 0.0)), 3.0, solver=solver)
        assert not report.details['lossless']
        assert report.details['rhs_sign'] == 1
        assert report.tolerance == 1e-3
        assert report.passed
        # the outgoing flux does not depend on the radius of the enclosing circle
        farther = check_energy(config, s0, s1, mesh, PlaneWave((1.0, 0.0)), 5.0, solver=solver)
        assert farther.passed
        assert farther.details['lhs'] == pytest.approx(report.details['lhs'], rel=1e-3)

    def test_needs_plane_wave(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="plane wave"):
            check_energy(config, s0, s1, mesh, None, 3.0, solver=benchmark_solver)

    def test_circle_should_enclose_s0(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="enclose S0"):
            check_energy(config, s0, s1, mesh, PlaneWave((1.0, 0.0)), 1.0, solver=benchmark_solver)


class TestCompleteness:
    def test_benchmark(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        singular_values, report = completeness_study(config, s0, s1, mesh, solver=benchmark_solver)
        assert len(singular_values) == 32
        assert np.all(np.diff(singular_values) <= 0.0)
        assert report.details['strictly_decreasing']
        assert report.parameters['prefixes'] == [4, 8, 16, 32]
        assert report.passed

    def test_deterministic_for_seed(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        first = completeness_study(config, s0, s1, mesh, directions=8, seed=3, solver=benchmark_solver)[1]
        second = completeness_study(config, s0, s1, mesh, directions=8, seed=3, solver=benchmark_solver)[1]
        assert first.details['residuals'] == second.details['residuals']

    def test_too_few_directions(self, benchmark_setup, benchmark_solver):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="four directions"):
            completeness_study(config, s0, s1, mesh, directions=2, solver=benchmark_solver)


class TestOrthogonality:
    @pytest.fixture(scope='class')
    def polar_setup(self):
        s1 = Curve(kind='circle', radius=0.7, n_nodes=128)
        mesh = build_volume_mesh(s1, 0.02, {'kind': 'constant', 'value': 2.0}, 'polar')
        return s1, mesh

    def test_bessel_modes(self, polar_setup):
        s1, mesh = polar_setup
        mesh_tilde = mesh.with_index({'kind': 'constant', 'value': 3.0})
        field = interior_bessel_field(2.5, 2.0, mesh, s1)
        field_tilde = interior_bessel_field(2.5, 3.0, mesh, s1)
        report = check_orthogonality_identity(mesh, mesh_tilde, s1, 2.5, field, field_tilde)
        assert abs(complex(*report.details['D1'])) > 1e-3
        assert report.discrepancy <= 1e-6

    def test_same_index_is_exact(self, polar_setup):
        s1, mesh = polar_setup
        field = interior_bessel_field(2.5, 2.0, mesh, s1, order=1)
        report = check_orthogonality_identity(mesh, mesh, s1, 2.5, field, field)
        assert report.details['D1'] == [0.0, 0.0]
        assert report.discrepancy <= 1e-14

    def test_meshes_should_share_nodes(self, polar_setup):
        s1, mesh = polar_setup
        other = mesh.permuted(np.roll(np.arange(mesh.size), 1))
        field = interior_bessel_field(2.5, 2.0, mesh, s1)
        with pytest.raises(UserConfigValidationException, match="same mesh nodes"):
            check_orthogonality_identity(mesh, other, s1, 2.5, field, field)


class TestConvergenceStudy:
    def test_boundary_refinement(self, benchmark_setup, concentric_benchmark):
        config, s0, s1, mesh = benchmark_setup
        wave = PlaneWave((1.0, 0.0))
        angles = np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False)
        reference = series_far_field(concentric_benchmark, wave, angles)
        frame = convergence_study(config, [s0.resampled(16), s0.resampled(32)],
                                  [s1.resampled(16), s1.resampled(32)], mesh, wave, reference, progress=False)
        assert isinstance(frame, pd.DataFrame)
        assert list(frame.columns) == ['level', 'n0', 'n1', 'h', 'unknowns', 'error', 'error_ratio',
                                       'observed_order', 'stability_ratio']
        assert list(frame['n0']) == [16, 32]
        assert frame['error'].iloc[1] < frame['error'].iloc[0]
        assert np.isnan(frame['error_ratio'].iloc[0])
        assert frame['observed_order'].iloc[1] > 1.0
        assert np.all(np.isfinite(frame['stability_ratio']))

    def test_boundary_refinement_reaches_roundoff(self, benchmark_setup, concentric_benchmark):
        config, s0, s1, mesh = benchmark_setup
        wave = PlaneWave((1.0, 0.0))
        reference = series_far_field(concentric_benchmark, wave, np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False))
        levels = [32, 64, 128]
        frame = convergence_study(config, [s0.resampled(n) for n in levels], [s1.resampled(n) for n in levels],
                                  mesh, wave, reference, progress=False)
        assert frame['error_ratio'].iloc[1] >= 10.0
        assert frame['error'].iloc[2] <= 1e-12
        assert np.all(frame['stability_ratio'] <= 1e3)

    @pytest.mark.slow
    def test_volume_refinement_order(self):
        config, s0, s1, _ = helpers.build_setup(helpers.transparent_bump_config_dict(), n_nodes=64, mesh=False)
        wave = PlaneWave((1.0, 0.0))
        angles = np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False)
        reference = ls_reference([0.0, 0.0], 0.5, 0.02, 1.0, config.index_field, angles=angles, extrapolate=True)
        meshes = [build_volume_mesh(s1, h, config.index_field) for h in [0.1, 0.05]]
        frame = convergence_study(config, s0, s1, meshes, wave, reference, progress=False)
        assert list(frame['h']) == [0.1, 0.05]
        assert frame['observed_order'].iloc[1] >= 1.5
        assert np.all(frame['stability_ratio'] <= 1e3)

    def test_family_lengths_should_agree(self, benchmark_setup):
        config, s0, s1, mesh = benchmark_setup
        with pytest.raises(UserConfigValidationException, match="levels"):
            convergence_study(config, [s0, s0], [s1, s1, s1], mesh, PlaneWave((1.0, 0.0)),
                              lambda angles: None, progress=False)


class TestRunChecks:
    def test_unknown_check(self):
        with pytest.raises(UserConfigValidationException, match="check name should be one of"):
            decide('unitarity')

    @pytest.mark.parametrize("name", CheckNames.ALL)
    def test_decide(self, name):
        assert callable(decide(name))

    @pytest.mark.parametrize("threads", [1, 2])
    def test_reports_sorted_by_name(self, matched_setup, threads):
        config, s0, s1, mesh = matched_setup
        reports = run_checks(['reciprocity', 'energy', 'mixed_reciprocity', 'energy'], config, s0, s1, mesh,
                             threads=threads, reciprocity_directions=4)
        assert [report.name for report in reports] == ['energy', 'mixed_reciprocity', 'reciprocity']
        assert all(report.passed for report in reports)

    def test_mixed_reciprocity_covers_both_source_layers(self, benchmark_setup):
        config, s0, s1, mesh = benchmark_setup
        report, = run_checks(['mixed_reciprocity'], config, s0, s1, mesh)
        assert report.parameters['layer'] == ['omega0', 'omega1']
        assert set(report.details) == {'omega0', 'omega1'}
        assert report.discrepancy == max(details['discrepancy'] for details in report.details.values())
        assert report.passed
        assert CheckReport.from_json(report.to_json()) == report

    def test_explicit_source_point(self, matched_setup):
        config, s0, s1, mesh = matched_setup
        report, = run_checks(['mixed_reciprocity'], config, s0, s1, mesh, z=(3.0, 1.0))
        assert report.parameters['layer'] == 'omega0'

    @pytest.mark.parametrize("s1_params", [
        {'kind': 'circle', 'radius': 0.7},
        {'kind': 'kite', 'scale': 0.3},
    ])
    def test_layer_point(self, s1_params):
        s0 = Curve(kind='circle', radius=1.5, n_nodes=64)
        s1 = Curve(n_nodes=64, **s1_params)
        z = layer_point(s0, s1)
        assert classify_point(z, s0, s1) == 'omega1'
        assert s0.distance(z)[0] > 0.2
        assert s1.distance(z)[0] > 0.2

    def test_layer_point_needs_a_layer(self):
        s0 = Curve(kind='circle', radius=1.0, n_nodes=32)
        with pytest.raises(UserConfigValidationException, match="no point of Omega1"):
            layer_point(s0, s0.resampled(64))

    def test_single_factorisation(self, matched_setup, mocker):
        config, s0, s1, mesh = matched_setup
        spy = mocker.spy(TransmissionSolver, '__init__')
        run_checks(['reciprocity', 'energy'], config, s0, s1, mesh, reciprocity_directions=2)
        assert spy.call_count == 1
