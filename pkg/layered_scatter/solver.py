"""Assembly and dense LU solution of the coupled boundary/volume transmission system.

Unknowns are ordered (psi0, phi0, psi1, phi1, w): the double- and
single-layer densities on S0 and S1 followed by the total field at the
volume mesh nodes. The S0 rows are scaled by lam = 2/(lambda0 + 1) and the
S1 rows by mu = 2/(lambda1 + 1) so that every boundary block is the
identity plus a compact perturbation.
"""

import logging
import timeit
from collections import OrderedDict

import numpy as np
from raiutils.exceptions import UserConfigValidationException
from scipy.linalg import get_lapack_funcs, lu_factor, lu_solve

from layered_scatter.constants import OperatorKinds, Thresholds, Unknowns
from layered_scatter.density_solution import DensitySolution
from layered_scatter.geometry import validate_layered_geometry
from layered_scatter.medium import TransmissionData, incident_to_data
from layered_scatter.potentials import assemble_boundary_op, assemble_volume_op, layer_potential_matrix
from layered_scatter.utils.exception import IllConditioned

logger = logging.getLogger(__name__)

S, K = OperatorKinds.SingleLayer, OperatorKinds.DoubleLayer


def _index_map(n0, n1, m):
    sizes = [(Unknowns.Psi0, n0), (Unknowns.Phi0, n0), (Unknowns.Psi1, n1), (Unknowns.Phi1, n1)]
    if m:
        sizes.append((Unknowns.W, m))
    index_map = OrderedDict()
    start = 0
    for name, size in sizes:
        index_map[name] = slice(start, start + size)
        start += size
    return index_map


def assemble_operators(config, s0, s1, mesh=None, threads=1):
    """Every block of the transmission system, keyed by (kind, source, target, layer) labels.

    Labels: 'K00' is K on S0 at k0, 'K01' on S0 at k1, 'K11' on S1 at k1,
    'K12' on S1 at k2. Cross-curve blocks carry a 'x' prefix: 'xK11' maps
    S1 densities to S0 at k1, 'xK01' maps S0 densities to S1 at k1 and
    'xK12' maps S1 densities to the mesh nodes at k2. 'V' is the volume
    operator on the mesh and 'V_S1', "V'_S1" its trace and normal derivative on S1.
    """
    k0, k1, k2 = config.k0, config.k1, config.k2
    blocks = {}
    for kind in OperatorKinds.ALL:
        blocks[kind + '00'] = assemble_boundary_op(kind, s0, k=k0).matrix
        blocks[kind + '01'] = assemble_boundary_op(kind, s0, k=k1).matrix
        blocks[kind + '11'] = assemble_boundary_op(kind, s1, k=k1).matrix
        blocks[kind + '12'] = assemble_boundary_op(kind, s1, k=k2).matrix
        blocks['x' + kind + '11'] = assemble_boundary_op(kind, s1, s0, k=k1, threads=threads).matrix
        blocks['x' + kind + '01'] = assemble_boundary_op(kind, s0, s1, k=k1, threads=threads).matrix
    if mesh is not None:
        blocks['xK12'] = layer_potential_matrix(K, s1, k2, mesh.nodes, threads=threads)
        blocks['xS12'] = layer_potential_matrix(S, s1, k2, mesh.nodes, threads=threads)
        blocks['V'] = assemble_volume_op(mesh, k2, threads=threads).matrix
        blocks['V_S1'] = assemble_volume_op(mesh, k2, targets=s1.nodes, threads=threads).matrix
        blocks["V'_S1"] = assemble_volume_op(mesh, k2, targets=s1.nodes, normals=s1.normals,
                                             threads=threads).matrix
    return blocks


def assemble_system(config, s0, s1, mesh, threads=1, boundary_only=False, blocks=None):
    """Dense matrix I + A of the transmission system and its index map.

    :param config: MediumConfig.
    :param s0: Outer interface.
    :param s1: Inner interface.
    :param mesh: VolumeMesh of the obstacle, ignored when boundary_only is set.
    :param boundary_only: Drop the volume unknowns and every block acting on them.
    :returns: (matrix, index_map) where index_map maps Unknowns names to slices.
    """
    if blocks is None:
        blocks = assemble_operators(config, s0, s1, None if boundary_only else mesh, threads)
    n0, n1 = s0.n_nodes, s1.n_nodes
    m = 0 if boundary_only else mesh.size
    index_map = _index_map(n0, n1, m)
    lam, mu = config.lam, config.mu
    l0, l1 = config.lambda0, config.lambda1
    size = 2 * n0 + 2 * n1 + m
    matrix = np.zeros((size, size), dtype=complex)
    psi0, phi0, psi1, phi1 = (index_map[name] for name in Unknowns.BOUNDARY)
    b = blocks

    matrix[psi0, psi0] = lam * (l0 * b['K00'] - b['K01'])
    matrix[psi0, phi0] = lam * (b['S00'] - b['S01'])
    matrix[psi0, psi1] = -lam * l1 * b['xK11']
    matrix[psi0, phi1] = -lam * b['xS11']

    matrix[phi0, psi0] = lam * l0 * (b['T01'] - b['T00'])
    matrix[phi0, phi0] = lam * (l0 * b["K'01"] - b["K'00"])
    matrix[phi0, psi1] = lam * l0 * l1 * b['xT11']
    matrix[phi0, phi1] = lam * l0 * b["xK'11"]

    matrix[psi1, psi0] = mu * b['xK01']
    matrix[psi1, phi0] = mu * b['xS01']
    matrix[psi1, psi1] = mu * (l1 * b['K11'] - b['K12'])
    matrix[psi1, phi1] = mu * (b['S11'] - b['S12'])

    matrix[phi1, psi0] = -mu * b['xT01']
    matrix[phi1, phi0] = -mu * b["xK'01"]
    matrix[phi1, psi1] = mu * l1 * (b['T12'] - b['T11'])
    matrix[phi1, phi1] = mu * (l1 * b["K'12"] - b["K'11"])

    if m:
        w = index_map[Unknowns.W]
        matrix[psi1, w] = -mu * b['V_S1']
        matrix[phi1, w] = mu * l1 * b["V'_S1"]
        matrix[w, psi1] = -b['xK12']
        matrix[w, phi1] = -b['xS12']
        matrix[w, w] = -b['V']

    matrix[np.diag_indices(size)] += 1.0
    logger.debug(f"transmission system of size {size} (N0={n0}, N1={n1}, M={m}) assembled")
    return matrix, index_map


def right_hand_side(data, config, index_map):
    """R = (lam f, -lam g, mu p, -mu q, 0)."""
    size = max(block.stop for block in index_map.values())
    rhs = np.zeros(size, dtype=complex)
    rhs[index_map[Unknowns.Psi0]] = config.lam * data.f
    rhs[index_map[Unknowns.Phi0]] = -config.lam * data.g
    rhs[index_map[Unknowns.Psi1]] = config.mu * data.p
    rhs[index_map[Unknowns.Phi1]] = -config.mu * data.q
    return rhs


def condition_number_estimate(matrix, lu):
    """1-norm condition estimate from the LAPACK reciprocal-condition routine on an LU factor."""
    gecon, = get_lapack_funcs(('gecon',), (lu,))
    anorm = np.linalg.norm(matrix, 1)
    rcond, info = gecon(lu, anorm, norm='1')
    if info != 0 or rcond <= 0.0:
        return np.inf
    return 1.0 / rcond


class TransmissionSolver:
    """Assembled and factored transmission system for one geometry and medium.

    The matrix is assembled and LU-factored once; any number of incident
    fields can then be solved against the same factorisation.
    """

    def __init__(self, config, s0, s1, mesh=None, threads=1, boundary_only=False):
        """Init method

        :param config: MediumConfig, its index field is sampled on the mesh nodes.
        :param s0: Outer interface S0.
        :param s1: Inner interface S1.
        :param mesh: VolumeMesh on the obstacle; may be None only with boundary_only.
        :param threads: Worker threads for the row-block assembly.
        :param boundary_only: Solve the boundary system without the volume coupling (n = 1 only).
        :raises IllConditioned: if the condition estimate exceeds 1e12.
        """
        start_time = timeit.default_timer()
        validate_layered_geometry(s0, s1)
        if mesh is None and not boundary_only:
            raise UserConfigValidationException("a volume mesh is required unless boundary_only is set")
        if mesh is not None:
            mesh = mesh.with_index(config.index_field)
            if boundary_only and not mesh.is_unit:
                raise UserConfigValidationException("boundary_only needs a unit refractive index")
        self.config = config
        self.s0 = s0
        self.s1 = s1
        self.mesh = mesh
        self.threads = threads
        self.boundary_only = boundary_only

        self.operators = assemble_operators(config, s0, s1, None if boundary_only else mesh, threads)
        self.matrix, self.index_map = assemble_system(config, s0, s1, mesh, threads, boundary_only,
                                                      blocks=self.operators)
        self._lu = lu_factor(self.matrix)
        self.condition_estimate = condition_number_estimate(self.matrix, self._lu[0])
        self.elapsed = timeit.default_timer() - start_time
        logger.info(f"system of size {self.size} factored in {self.elapsed:.3f}s, "
                    f"condition estimate {self.condition_estimate:.3e}")
        if self.condition_estimate > Thresholds.CONDITION_LIMIT:
            raise IllConditioned(
                "condition estimate {0:.3e} exceeds {1:.0e}: the configuration is close to an interior "
                "resonance, check that k2^2 is not a Neumann eigenvalue of the obstacle".format(
                    self.condition_estimate, Thresholds.CONDITION_LIMIT),
                condition_estimate=self.condition_estimate)

    @property
    def size(self):
        return self.matrix.shape[0]

    def right_hand_side(self, data):
        data.check_lengths(self.s0, self.s1)
        return right_hand_side(data, self.config, self.index_map)

    def _residual(self, solution, rhs):
        rhs_norm = np.linalg.norm(rhs)
        misfit = np.linalg.norm(self.matrix @ solution - rhs)
        residual = misfit / rhs_norm if rhs_norm > 0.0 else misfit
        if residual > Thresholds.SYSTEM_RESIDUAL:
            logger.warning(f"relative residual {residual:.3e} of the transmission system exceeds "
                           f"{Thresholds.SYSTEM_RESIDUAL:.0e}")
        return residual

    def solve_data(self, data, incident=None):
        """Densities for prescribed transmission data."""
        rhs = self.right_hand_side(data)
        solution = lu_solve(self._lu, rhs)
        return DensitySolution(self, solution, self._residual(solution, rhs), incident)

    def solve(self, inc):
        """Densities for an incident PlaneWave or PointSource."""
        data = incident_to_data(inc, self.config, self.s0, self.s1)
        return self.solve_data(data, incident=inc)

    def solve_many(self, incs):
        """Densities for several incident fields through one multi-column LU solve."""
        incs = list(incs)
        if not incs:
            return []
        rhs = np.column_stack([self.right_hand_side(incident_to_data(inc, self.config, self.s0, self.s1))
                               for inc in incs])
        solutions = lu_solve(self._lu, rhs)
        return [DensitySolution(self, solutions[:, j], self._residual(solutions[:, j], rhs[:, j]), inc)
                for j, inc in enumerate(incs)]


def solve_direct(inc, config, s0, s1, mesh, threads=1):
    """Assemble, factor and solve for a single incident field.

    :returns: DensitySolution.
    :raises IllConditioned: if the condition estimate exceeds 1e12.
    """
    return TransmissionSolver(config, s0, s1, mesh, threads=threads).solve(inc)


__all__ = ['TransmissionSolver', 'TransmissionData', 'assemble_system', 'assemble_operators',
           'right_hand_side', 'solve_direct', 'incident_to_data']
