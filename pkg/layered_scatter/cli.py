"""Command-line front end: layered-scatter {solve,farfield,verify,convergence} --config run.json."""

import argparse
import copy
import json
import logging
import os
import sys
from dataclasses import dataclass, field

import jsonschema
import numpy as np
import pandas as pd
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import (CheckNames, Commands, CurveKinds, ExitCodes, IncidentKinds, IndexFieldKinds,
                                       QuadratureRules, _SchemaVersions)
from layered_scatter.curve import Curve
from layered_scatter.far_field import default_angles
from layered_scatter.geometry import build_volume_mesh
from layered_scatter.medium import MediumConfig, PlaneWave, incident_from_params
from layered_scatter.oracle import ConcentricConfig, ls_reference, series_far_field
from layered_scatter.solver import TransmissionSolver
from layered_scatter.utils.exception import (AmbiguousPoint, DomainError, IllConditioned, IoError, MeshTooCoarse,
                                             ModeSystemSingular, SchemaError, SingularGeometry)
from layered_scatter.utils.serialize import read_json, write_csv, write_json
from layered_scatter.verify import convergence_study, run_checks

logger = logging.getLogger(__name__)

DEFAULTS = {
    'version': _SchemaVersions.CURRENT_VERSION,
    'index_field': {'kind': IndexFieldKinds.Constant, 'value': 1.0},
    'discretization': {'n0': 128, 'n1': 128, 'h': 0.04, 'quadrature': QuadratureRules.Cartesian},
    'incident': {'kind': IncidentKinds.PlaneWave, 'direction': [1.0, 0.0]},
    'checks': list(CheckNames.ALL),
    'check_options': {},
    'convergence': {'n_nodes': [32, 64, 128, 256], 'h': [0.08, 0.04, 0.02], 'epsilon': 1e-6},
    'n_angles': 360,
    'seed': 0,
    'threads': 1,
    'output_dir': 'out',
}


def _load_schema():
    schema_path = os.path.join(os.path.dirname(__file__), 'schema',
                               'run_config_v{0}.json'.format(_SchemaVersions.CURRENT_VERSION))
    with open(schema_path, 'r') as schema_file:
        return json.load(schema_file)


def _field_path(error):
    path = list(error.absolute_path)
    if error.validator == 'required':
        missing = error.message.split("'")[1] if "'" in error.message else None
        if missing is not None:
            path.append(missing)
    return '.'.join(str(part) for part in path) or '<root>'


def validate_against_schema(raw):
    """Validate a raw configuration dictionary against the run configuration schema.

    :raises SchemaError: naming the dotted path of the first offending field.
    """
    validator = jsonschema.Draft7Validator(_load_schema())
    error = jsonschema.exceptions.best_match(validator.iter_errors(raw))
    if error is not None:
        path = _field_path(error)
        raise SchemaError("{0}: {1}".format(path, error.message), field_path=path)
    version = raw.get('version', _SchemaVersions.CURRENT_VERSION)
    if version not in _SchemaVersions.ALL_VERSIONS:
        raise SchemaError("version: unsupported configuration version {0}".format(version), field_path='version')


def _with_defaults(raw):
    resolved = copy.deepcopy(DEFAULTS)
    for key, value in raw.items():
        if isinstance(value, dict) and isinstance(resolved.get(key), dict):
            resolved[key].update(copy.deepcopy(value))
        else:
            resolved[key] = copy.deepcopy(value)
    if 'incident' in raw:
        resolved['incident'] = copy.deepcopy(raw['incident'])
    if 'index_field' in raw:
        resolved['index_field'] = copy.deepcopy(raw['index_field'])
    resolved['checks'] = sorted(resolved['checks'])
    return resolved


@dataclass(frozen=True)
class RunConfig:
    """Resolved and validated run configuration."""

    medium: dict
    s0: dict
    s1: dict
    index_field: dict
    discretization: dict
    incident: dict
    checks: tuple
    check_options: dict
    convergence: dict
    n_angles: int
    seed: int
    threads: int
    output_dir: str
    version: str = _SchemaVersions.CURRENT_VERSION
    source_path: str = field(default=None, compare=False)

    def to_dict(self):
        return {'version': self.version, 'medium': self.medium, 's0': self.s0, 's1': self.s1,
                'index_field': self.index_field, 'discretization': self.discretization,
                'incident': self.incident, 'checks': list(self.checks), 'check_options': self.check_options,
                'convergence': self.convergence, 'n_angles': self.n_angles, 'seed': self.seed,
                'threads': self.threads, 'output_dir': self.output_dir}

    def medium_config(self):
        return MediumConfig(index_field=self.index_field, **self.medium)

    def curves(self, n0=None, n1=None):
        s0 = Curve(n_nodes=n0 or self.discretization['n0'], **self.s0)
        s1 = Curve(n_nodes=n1 or self.discretization['n1'], **self.s1)
        return s0, s1

    def mesh(self, s1, h=None):
        return build_volume_mesh(s1, h or self.discretization['h'], self.index_field,
                                 self.discretization['quadrature'])

    def incident_field(self):
        return incident_from_params(self.incident)

    def angles(self):
        return default_angles(self.n_angles)


def parse_config(path, overrides=None):
    """Read, validate and resolve a JSON run configuration.

    :param path: Path of the JSON file.
    :param overrides: Values taking precedence over the file (e.g. from command-line flags).
    :returns: RunConfig with every default applied.
    :raises IoError: if the file cannot be read.
    :raises SchemaError: if the document violates the schema.
    """
    try:
        raw = read_json(path)
    except json.JSONDecodeError as error:
        raise SchemaError("<root>: invalid JSON ({0})".format(error)) from error
    if not isinstance(raw, dict):
        raise SchemaError("<root>: the configuration should be a JSON object")
    validate_against_schema(raw)
    resolved = _with_defaults(raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            resolved[key] = value
    validate_against_schema(resolved)
    config = RunConfig(medium=resolved['medium'], s0=resolved['s0'], s1=resolved['s1'],
                       index_field=resolved['index_field'], discretization=resolved['discretization'],
                       incident=resolved['incident'], checks=tuple(resolved['checks']),
                       check_options=resolved['check_options'], convergence=resolved['convergence'],
                       n_angles=resolved['n_angles'], seed=resolved['seed'], threads=resolved['threads'],
                       output_dir=resolved['output_dir'], version=resolved['version'], source_path=path)
    # semantic validation: every object must be constructible
    config.medium_config()
    config.curves()
    config.incident_field()
    logger.debug(f"configuration {path} resolved")
    return config


def write_resolved_config(cfg):
    return write_json(cfg.to_dict(), os.path.join(cfg.output_dir, 'resolved_config.json'))


def _setup(cfg):
    config = cfg.medium_config()
    s0, s1 = cfg.curves()
    return config, s0, s1, cfg.mesh(s1)


def cmd_solve(cfg):
    """Solve for the configured incident field; writes densities.csv and farfield.csv."""
    config, s0, s1, mesh = _setup(cfg)
    solution = TransmissionSolver(config, s0, s1, mesh, threads=cfg.threads).solve(cfg.incident_field())
    write_csv(solution.densities_frame(), os.path.join(cfg.output_dir, 'densities.csv'))
    solution.far_field(cfg.angles()).to_csv(os.path.join(cfg.output_dir, 'farfield.csv'))
    return ExitCodes.OK


def cmd_farfield(cfg):
    config, s0, s1, mesh = _setup(cfg)
    solution = TransmissionSolver(config, s0, s1, mesh, threads=cfg.threads).solve(cfg.incident_field())
    solution.far_field(cfg.angles()).to_csv(os.path.join(cfg.output_dir, 'farfield.csv'))
    return ExitCodes.OK


def write_checks(reports, output_dir):
    frame = pd.DataFrame([report.to_row() for report in reports],
                         columns=['check', 'discrepancy', 'tolerance', 'pass'])
    write_csv(frame, os.path.join(output_dir, 'checks.csv'))
    write_json([json.loads(report.to_json()) for report in reports], os.path.join(output_dir, 'checks.json'))


def cmd_verify(cfg, progress=False):
    """Run the selected checks; exit code 0 exactly when all pass."""
    config, s0, s1, mesh = _setup(cfg)
    options = dict(cfg.check_options)
    options['incident'] = cfg.incident_field()
    options['seed'] = cfg.seed
    reports = run_checks(cfg.checks, config, s0, s1, mesh, threads=cfg.threads, progress=progress, **options)
    write_checks(reports, cfg.output_dir)
    return ExitCodes.OK if all(report.passed for report in reports) else ExitCodes.CHECK_FAILED


def _is_concentric(cfg, config):
    circles = cfg.s0['kind'] == CurveKinds.Circle and cfg.s1['kind'] == CurveKinds.Circle
    centred = not np.any(cfg.s0.get('center', [0.0, 0.0])) and not np.any(cfg.s1.get('center', [0.0, 0.0]))
    field = config.index_field
    return circles and centred and field.kind == IndexFieldKinds.Constant and field.value.imag == 0.0


def _is_transparent(config):
    return config.k0 == config.k1 == config.k2 and config.lambda0 == 1.0 and config.lambda1 == 1.0 and \
        config.index_field.support_radius is not None


def cmd_convergence(cfg, progress=False):
    """Far-field errors over a node-count family (series oracle) or a mesh-size family
    (extrapolated Lippmann-Schwinger reference); writes convergence.csv."""
    config = cfg.medium_config()
    inc = cfg.incident_field()
    angles = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
    levels = cfg.convergence
    if _is_concentric(cfg, config):
        concentric = ConcentricConfig(cfg.s0['radius'], cfg.s1['radius'], config)
        reference = series_far_field(concentric, inc, angles)
        curves = [cfg.curves(n, n) for n in levels['n_nodes']]
        s0_family = [pair[0] for pair in curves]
        s1_family = [pair[1] for pair in curves]
        meshes = cfg.mesh(s1_family[-1])
    elif _is_transparent(config) and isinstance(inc, PlaneWave):
        field = config.index_field
        reference = ls_reference(field.support_center, field.support_radius, min(levels['h']), config.k0, field,
                                 inc.direction, angles, extrapolate=True)
        s0_family, s1_family = cfg.curves()
        meshes = [cfg.mesh(s1_family, h) for h in levels['h']]
    else:
        raise UserConfigValidationException(
            "convergence needs concentric circles with a real constant index, or transparent interfaces "
            "around a compactly supported index with a plane wave")
    frame = convergence_study(config, s0_family, s1_family, meshes, inc, reference,
                              epsilon=levels['epsilon'], threads=cfg.threads, progress=progress)
    write_csv(frame, os.path.join(cfg.output_dir, 'convergence.csv'))
    return ExitCodes.OK


def _parser():
    parser = argparse.ArgumentParser(prog='layered-scatter',
                                     description='Transmission scattering by an obstacle in a two-layer medium.')
    parser.add_argument('command', choices=Commands.ALL)
    parser.add_argument('--config', required=True, help='JSON run configuration')
    parser.add_argument('--out', default=None, help='output directory (overrides output_dir)')
    parser.add_argument('--threads', type=int, default=None, help='worker threads for assembly and checks')
    parser.add_argument('--seed', type=int, default=None, help='seed of the completeness target')
    parser.add_argument('--verbose', action='store_true', help='debug logging and progress bars')
    return parser


def main(argv=None):
    """Entry point; returns the process exit code."""
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        cfg = parse_config(args.config, {'output_dir': args.out, 'threads': args.threads, 'seed': args.seed})
        write_resolved_config(cfg)
        if args.command == Commands.Solve:
            return cmd_solve(cfg)
        elif args.command == Commands.FarField:
            return cmd_farfield(cfg)
        elif args.command == Commands.Verify:
            return cmd_verify(cfg, progress=args.verbose)
        return cmd_convergence(cfg, progress=args.verbose)
    except UserConfigValidationException as error:
        logger.error(f"configuration error: {error}")
        return ExitCodes.SCHEMA_ERROR
    except (IoError, OSError) as error:
        logger.error(f"i/o error: {error}")
        return ExitCodes.IO_ERROR
    except IllConditioned as error:
        logger.error(f"ill-conditioned system: {error}")
        return ExitCodes.ILL_CONDITIONED
    except (AmbiguousPoint, MeshTooCoarse, SingularGeometry, ModeSystemSingular, DomainError) as error:
        logger.error(f"solver error: {error}")
        return ExitCodes.SOLVER_ERROR


__all__ = ['RunConfig', 'parse_config', 'main', 'cmd_solve', 'cmd_farfield', 'cmd_verify', 'cmd_convergence']


if __name__ == '__main__':
    sys.exit(main())
