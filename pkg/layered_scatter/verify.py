"""Executable checks of the identities satisfied by solutions of the transmission problem.

Every check returns a CheckReport whose discrepancy is compared with a
tolerance. The checks are deterministic for fixed configuration, seed and
discretisation.
"""

import logging
import timeit
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from raiutils.exceptions import UserConfigValidationException
from tqdm import tqdm

from layered_scatter.check_report import CheckReport
from layered_scatter.constants import CheckNames, LayerId, QuadratureRules, Thresholds
from layered_scatter.far_field import FarField
from layered_scatter.geometry import build_volume_mesh, classify_point
from layered_scatter.medium import PlaneWave, PointSource, incident_to_data
from layered_scatter.oracle import interior_bessel_field
from layered_scatter.solver import TransmissionSolver

logger = logging.getLogger(__name__)

FLUX_POINTS = 512


def _solver_for(config, s0, s1, mesh, solver, threads):
    if solver is not None:
        return solver
    return TransmissionSolver(config, s0, s1, mesh, threads=threads)


def _angle(direction):
    direction = np.asarray(direction, dtype=float)
    return float(np.arctan2(direction[1], direction[0]))


def _normalized_gap(lhs, rhs):
    """|lhs - rhs| / max(|lhs|, |rhs|), or the plain difference when both are below 1e-10."""
    gap = float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))
    scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
    return gap / scale if scale >= Thresholds.NEGLIGIBLE_SCALE else gap


def nested_directions(count):
    """count unit directions, count a power of two, ordered so that every prefix of length 2^p is equispaced."""
    if count < 1 or count & (count - 1):
        raise UserConfigValidationException("direction count should be a power of two, got {0}".format(count))
    bits = max(int(np.log2(count)), 1)
    order = [int(format(j, '0{0}b'.format(bits))[::-1], 2) for j in range(count)] if count > 1 else [0]
    angles = 2.0 * np.pi * np.asarray(order) / count
    return np.column_stack((np.cos(angles), np.sin(angles)))


def check_mixed_reciprocity(config, s0, s1, mesh, z, xhat, tolerance=1e-5, solver=None, threads=1):
    """Compare the far field of a point source at z with the plane-wave field at z.

    For z in Omega0, Phi_inf(x, z) = gamma0 u^s(z, -x); for z in Omega1,
    Phi_inf(x, z) = lambda0 gamma0 v(z, -x), with gamma0 = exp(i pi/4) / sqrt(8 pi k0).

    :raises AmbiguousPoint: if z lies on an interface.
    """
    start_time = timeit.default_timer()
    z = np.asarray(z, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    layer = classify_point(z, s0, s1)
    if layer not in LayerId.SOURCE_LAYERS:
        raise UserConfigValidationException("z should lie in Omega0 or Omega1, got {0}".format(layer))
    solver = _solver_for(config, s0, s1, mesh, solver, threads)
    source_solution, plane_solution = solver.solve_many([PointSource(z, layer), PlaneWave(-xhat / np.hypot(*xhat))])
    lhs = source_solution.far_field([_angle(xhat)]).values[0]
    gamma0 = np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi * config.k0)
    constant = gamma0 if layer == LayerId.Omega0 else config.lambda0 * gamma0
    rhs = constant * plane_solution.evaluate_field(z[None, :])[0]
    discrepancy = _normalized_gap(lhs, rhs)
    logger.info(f"mixed reciprocity at z={z.tolist()} ({layer}): discrepancy {discrepancy:.3e}")
    return CheckReport(CheckNames.MixedReciprocity, discrepancy, tolerance,
                       parameters={'z': z.tolist(), 'xhat': xhat.tolist(), 'layer': layer},
                       runtime=timeit.default_timer() - start_time,
                       details={'source_far_field': [lhs.real, lhs.imag], 'plane_wave_side': [rhs.real, rhs.imag]})


def check_reciprocity(config, s0, s1, mesh, directions, tolerance=1e-6, solver=None, threads=1):
    """max over direction pairs of |u_inf(a, b) - u_inf(-b, -a)|, normalised by max |u_inf|."""
    start_time = timeit.default_timer()
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if len(directions) < 2:
        raise UserConfigValidationException("reciprocity needs at least two directions")
    incidences = np.vstack((directions, -directions))
    angles = np.arctan2(incidences[:, 1], incidences[:, 0])
    solver = _solver_for(config, s0, s1, mesh, solver, threads)
    solutions = solver.solve_many([PlaneWave(d / np.hypot(*d)) for d in incidences])
    # patterns[i, j] = u_inf(observation i; incidence j)
    patterns = np.column_stack([solution.far_field(angles).values for solution in solutions])
    count = len(directions)
    gap = 0.0
    for a in range(count):
        for b in range(count):
            gap = max(gap, abs(patterns[a, b] - patterns[count + b, count + a]))
    scale = float(np.max(np.abs(patterns)))
    discrepancy = gap / scale if scale >= Thresholds.NEGLIGIBLE_SCALE else gap
    logger.info(f"far-field reciprocity over {count} directions: discrepancy {discrepancy:.3e}")
    return CheckReport(CheckNames.Reciprocity, discrepancy, tolerance,
                       parameters={'directions': directions.tolist()},
                       runtime=timeit.default_timer() - start_time,
                       details={'max_abs_far_field': scale})


def check_energy(config, s0, s1, mesh, inc, R, tolerance=None, solver=None, threads=1):
    """Energy identity Im int_{|x|=R} u du*/dnu ds = k2^2 lambda0 lambda1 int Im(n) |w|^2 dx.

    The flux uses the total field on 512 trapezoid points. For a lossless
    index the discrepancy is |LHS - RHS| / (k0 2 pi R) with default tolerance
    1e-6; otherwise it is |LHS - RHS| / |RHS| with default tolerance 1e-3.
    """
    start_time = timeit.default_timer()
    if not isinstance(inc, PlaneWave):
        raise UserConfigValidationException("the energy check needs a plane wave")
    if R <= float(np.max(np.hypot(*s0.sample(4 * s0.n_nodes).T))):
        raise UserConfigValidationException("the flux circle of radius {0} should enclose S0".format(R))
    solver = _solver_for(config, s0, s1, mesh, solver, threads)
    solution = solver.solve(inc)
    theta = 2.0 * np.pi * np.arange(FLUX_POINTS) / FLUX_POINTS
    normals = np.column_stack((np.cos(theta), np.sin(theta)))
    points = R * normals
    u = solution.evaluate_field(points, total=True)
    du = solution.evaluate_normal_derivative(points, normals, total=True)
    lhs = float(np.imag(np.sum(u * np.conj(du))) * 2.0 * np.pi * R / FLUX_POINTS)
    n_values = solver.mesh.n_values
    rhs = float(config.k2 ** 2 * config.lambda0 * config.lambda1 *
                np.sum(n_values.imag * np.abs(solution.w_grid) ** 2 * solver.mesh.weights))
    lossless = bool(np.all(n_values.imag == 0.0))
    if lossless:
        discrepancy = abs(lhs - rhs) / (config.k0 * 2.0 * np.pi * R)
        tolerance = 1e-6 if tolerance is None else tolerance
    else:
        discrepancy = abs(lhs - rhs) / abs(rhs) if rhs != 0.0 else np.inf
        tolerance = 1e-3 if tolerance is None else tolerance
    logger.info(f"energy identity at R={R}: flux {lhs:.6e}, absorption {rhs:.6e}")
    return CheckReport(CheckNames.Energy, discrepancy, tolerance,
                       parameters={'R': float(R), 'direction': inc.direction.tolist()},
                       runtime=timeit.default_timer() - start_time,
                       details={'lhs': lhs, 'rhs': rhs, 'rhs_sign': int(np.sign(rhs)), 'lossless': lossless})


def _smooth_target(s1, seed, max_order=20):
    rng = np.random.default_rng(seed)
    orders = np.arange(-max_order, max_order + 1)
    coefficients = (rng.standard_normal(len(orders)) + 1j * rng.standard_normal(len(orders))) * \
        np.exp(-np.abs(orders) / 4.0)
    return np.exp(1j * np.outer(s1.parameters, orders)) @ coefficients


def _relative_lstsq_residual(matrix, target):
    coefficients = np.linalg.lstsq(matrix, target, rcond=None)[0]
    return float(np.linalg.norm(matrix @ coefficients - target) / np.linalg.norm(target))


def completeness_study(config, s0, s1, mesh, directions=32, seed=0, prefixes=(4, 8, 16, 32), tolerance=1e-10,
                       solver=None, threads=1):
    """Span of the interior normal derivatives dw(., d_j)/dnu on S1 for plane waves.

    The columns of diag(sqrt(w)) [dw_j/dnu] are fitted by least squares to a
    seeded random smooth target over nested direction prefixes. The check
    passes when the residuals strictly decrease and a column of the matrix
    is recovered to the tolerance.

    :param directions: Number of directions (a power of two) or a (J, 2) array.
    :returns: (singular values in non-increasing order, CheckReport).
    """
    start_time = timeit.default_timer()
    if np.isscalar(directions):
        directions = nested_directions(int(directions))
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if len(directions) < 4:
        raise UserConfigValidationException("completeness needs at least four directions")
    prefixes = [p for p in prefixes if p <= len(directions)]
    solver = _solver_for(config, s0, s1, mesh, solver, threads)
    columns = [solution.interior_traces()[1]
               for solution in solver.solve_many([PlaneWave(d / np.hypot(*d)) for d in directions])]
    root_weights = np.sqrt(s1.weights)
    matrix = root_weights[:, None] * np.column_stack(columns)
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    target = root_weights * _smooth_target(s1, seed)
    residuals = [_relative_lstsq_residual(matrix[:, :p], target) for p in prefixes]
    in_span = _relative_lstsq_residual(matrix[:, :prefixes[0]], matrix[:, 0])
    decreasing = all(later < earlier for earlier, later in zip(residuals, residuals[1:]))
    discrepancy = in_span if decreasing else 1.0
    logger.info(f"completeness residuals {dict(zip(prefixes, residuals))}, in-span {in_span:.3e}")
    report = CheckReport(CheckNames.Completeness, discrepancy, tolerance,
                         parameters={'directions': len(directions), 'seed': seed, 'prefixes': list(prefixes)},
                         runtime=timeit.default_timer() - start_time,
                         details={'residuals': residuals, 'in_span_residual': in_span,
                                  'strictly_decreasing': decreasing, 'singular_values': singular_values.tolist()})
    return singular_values, report


def check_orthogonality_identity(mesh, mesh_tilde, s1, k2, field, field_tilde, tolerance=1e-6):
    """Green identity int (n - n~) w w~ dx = (1/k2^2) int_{S1} (w dw~/dnu - w~ dw/dnu) ds.

    :param mesh: Mesh carrying n.
    :param mesh_tilde: Mesh with the same nodes carrying n~.
    :param field: InteriorField solving the n-equation.
    :param field_tilde: InteriorField solving the n~-equation.
    """
    start_time = timeit.default_timer()
    if mesh.size != mesh_tilde.size or not np.array_equal(mesh.nodes, mesh_tilde.nodes):
        raise UserConfigValidationException("both index fields should be sampled on the same mesh nodes")
    d1 = complex(np.sum((mesh.n_values - mesh_tilde.n_values) * field.values * field_tilde.values * mesh.weights))
    d2 = complex(np.sum((field.trace * field_tilde.normal_trace - field_tilde.trace * field.normal_trace) *
                        s1.weights) / k2 ** 2)
    discrepancy = abs(d1 - d2)
    logger.info(f"orthogonality identity: D1={d1:.6e}, D2={d2:.6e}")
    return CheckReport(CheckNames.Orthogonality, discrepancy, tolerance,
                       parameters={'k2': float(k2), 'mesh_nodes': mesh.size, 'h': mesh.h},
                       runtime=timeit.default_timer() - start_time,
                       details={'D1': [d1.real, d1.imag], 'D2': [d2.real, d2.imag]})


def _broadcast(family, count):
    if isinstance(family, (list, tuple)):
        if len(family) != count:
            raise UserConfigValidationException("every refinement family should have {0} levels".format(count))
        return list(family)
    return [family] * count


def convergence_study(config, s0_family, s1_family, meshes, inc, reference, angles=None, epsilon=1e-6,
                      threads=1, progress=True):
    """Far-field errors against a reference over a refinement family.

    Each level solves once, measures max |u_inf - u_ref| / max |u_ref| and
    perturbs f by epsilon on the same factorisation to estimate the
    stability ratio max |delta u_inf| / epsilon.

    :param s0_family: Curves S0 per level (a single curve is reused).
    :param s1_family: Curves S1 per level.
    :param meshes: VolumeMesh per level (a single mesh is reused).
    :param reference: FarField, or a callable angles -> FarField.
    :returns: pandas DataFrame with columns level, n0, n1, h, unknowns, error, error_ratio,
              observed_order, stability_ratio.
    """
    count = max(len(f) if isinstance(f, (list, tuple)) else 1 for f in (s0_family, s1_family, meshes))
    s0_family = _broadcast(s0_family, count)
    s1_family = _broadcast(s1_family, count)
    meshes = _broadcast(meshes, count)
    if isinstance(reference, FarField):
        angles = reference.angles
        reference_field = reference
    else:
        angles = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False) if angles is None else np.asarray(angles)
        reference_field = reference(angles)

    rows = []
    for level in tqdm(range(count), disable=not progress, desc='convergence'):
        s0, s1, mesh = s0_family[level], s1_family[level], meshes[level]
        solver = TransmissionSolver(config, s0, s1, mesh, threads=threads)
        data = incident_to_data(inc, config, s0, s1)
        far = solver.solve_data(data, incident=inc).far_field(angles)
        perturbed = solver.solve_data(data.perturbed(f=epsilon * np.ones(s0.n_nodes))).far_field(angles)
        rows.append({'level': level, 'n0': s0.n_nodes, 'n1': s1.n_nodes,
                     'h': mesh.h if mesh is not None else np.nan, 'unknowns': solver.size,
                     'error': far.relative_error(reference_field),
                     'stability_ratio': float(np.max(np.abs(perturbed.values - far.values))) / epsilon})
    frame = pd.DataFrame(rows)
    ratios = [np.nan]
    orders = [np.nan]
    for level in range(1, count):
        previous, current = frame.iloc[level - 1], frame.iloc[level]
        ratio = previous['error'] / current['error'] if current['error'] > 0 else np.inf
        ratios.append(ratio)
        if previous['h'] != current['h'] and np.isfinite(previous['h']):
            orders.append(np.log(ratio) / np.log(previous['h'] / current['h']))
        elif previous['n0'] != current['n0']:
            orders.append(np.log(ratio) / np.log(current['n0'] / previous['n0']))
        else:
            orders.append(np.nan)
    frame['error_ratio'] = ratios
    frame['observed_order'] = orders
    columns = ['level', 'n0', 'n1', 'h', 'unknowns', 'error', 'error_ratio', 'observed_order', 'stability_ratio']
    return frame[columns]


def _flux_radius(s0):
    return 2.0 * float(np.max(np.hypot(*s0.sample(4 * s0.n_nodes).T)))


def layer_point(s0, s1, rays=16, steps=19):
    """A point of Omega1 kept as far as a coarse search allows from both interfaces.

    Candidates lie on rays from the centre of S0 towards S0; the one with the largest
    distance to the sampled traces wins.
    """
    outer = s0.sample(rays)
    fractions = np.linspace(0.05, 0.95, steps)
    candidates = (s0.center + fractions[:, None, None] * (outer - s0.center)[None, :, :]).reshape(-1, 2)
    in_layer = s0.contains(candidates) & ~s1.contains(candidates)
    if not np.any(in_layer):
        raise UserConfigValidationException("no point of Omega1 found between the interfaces")
    candidates = candidates[in_layer]
    traces = np.vstack((s0.sample(8 * s0.n_nodes), s1.sample(8 * s1.n_nodes)))
    margin = np.min(np.hypot(candidates[:, None, 0] - traces[None, :, 0],
                             candidates[:, None, 1] - traces[None, :, 1]), axis=1)
    return candidates[int(np.argmax(margin))]


def _run_mixed_reciprocity(context):
    s0, s1 = context['s0'], context['s1']
    xhat = context.get('xhat', (0.0, 1.0))
    z = context.get('z')
    if z is not None:
        return check_mixed_reciprocity(context['config'], s0, s1, context['mesh'], z, xhat, solver=context['solver'])
    # one source in each layer the check covers
    sources = [s0.center + np.array([1.5 * s0.bounding_radius, 0.0]), layer_point(s0, s1)]
    reports = [check_mixed_reciprocity(context['config'], s0, s1, context['mesh'], source, xhat,
                                       solver=context['solver']) for source in sources]
    worst = max(reports, key=lambda report: report.discrepancy)
    return CheckReport(CheckNames.MixedReciprocity, worst.discrepancy, worst.tolerance,
                       parameters={'z': [report.parameters['z'] for report in reports],
                                   'xhat': np.asarray(xhat, dtype=float).tolist(),
                                   'layer': [report.parameters['layer'] for report in reports]},
                       runtime=sum(report.runtime for report in reports),
                       details={report.parameters['layer']: dict(report.details, discrepancy=report.discrepancy)
                                for report in reports})


def _run_reciprocity(context):
    return check_reciprocity(context['config'], context['s0'], context['s1'], context['mesh'],
                             nested_directions(context.get('reciprocity_directions', 8)), solver=context['solver'])


def _run_energy(context):
    inc = context.get('incident')
    if not isinstance(inc, PlaneWave):
        inc = PlaneWave((1.0, 0.0))
    return check_energy(context['config'], context['s0'], context['s1'], context['mesh'], inc,
                        context.get('R') or _flux_radius(context['s0']), solver=context['solver'])


def _run_completeness(context):
    _, report = completeness_study(context['config'], context['s0'], context['s1'], context['mesh'],
                                   context.get('completeness_directions', 32), seed=context.get('seed', 0),
                                   solver=context['solver'])
    return report


def _run_orthogonality(context):
    s1, k2 = context['s1'], context['config'].k2
    n, n_tilde = context.get('orthogonality_indices', (2.0, 3.0))
    mesh = build_volume_mesh(s1, context['mesh'].h, {'kind': 'constant', 'value': n}, QuadratureRules.Polar)
    mesh_tilde = mesh.with_index({'kind': 'constant', 'value': n_tilde})
    field = interior_bessel_field(k2, n, mesh, s1)
    field_tilde = interior_bessel_field(k2, n_tilde, mesh, s1)
    return check_orthogonality_identity(mesh, mesh_tilde, s1, k2, field, field_tilde)


def decide(check_name):
    """Decides the runner of a check from its name.

    A runner takes the shared context dictionary (config, s0, s1, mesh,
    solver and optional check parameters) and returns a CheckReport.
    """
    if check_name == CheckNames.Completeness:
        return _run_completeness
    elif check_name == CheckNames.Energy:
        return _run_energy
    elif check_name == CheckNames.MixedReciprocity:
        return _run_mixed_reciprocity
    elif check_name == CheckNames.Orthogonality:
        return _run_orthogonality
    elif check_name == CheckNames.Reciprocity:
        return _run_reciprocity
    raise UserConfigValidationException(
        "check name should be one of {0}, got {1}".format(CheckNames.ALL, check_name))


def run_checks(names, config, s0, s1, mesh, threads=1, progress=False, **options):
    """Run the named checks against one shared factorisation.

    :param names: Check names among CheckNames.ALL.
    :param threads: Worker threads; checks run concurrently when > 1.
    :param options: Optional check parameters (incident, seed, z, xhat, R, ...).
    :returns: list of CheckReport sorted by name.
    """
    names = sorted(set(names))
    runners = [decide(name) for name in names]
    context = dict(options)
    context.update({'config': config, 's0': s0, 's1': s1, 'mesh': mesh})
    context['solver'] = TransmissionSolver(config, s0, s1, mesh, threads=threads)
    if threads > 1 and len(runners) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda runner: runner(context), runners))
    else:
        reports = [runner(context) for runner in tqdm(runners, disable=not progress, desc='checks')]
    for report in reports:
        logger.info(f"{report.name}: discrepancy {report.discrepancy:.3e} "
                    f"(tolerance {report.tolerance:.0e}) {'pass' if report.passed else 'FAIL'}")
    return sorted(reports, key=lambda report: report.name)
