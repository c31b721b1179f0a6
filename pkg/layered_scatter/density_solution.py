"""Solved densities and the fields they represent.

In Omega0 the field is u = lambda0 K~ psi0 + S~ phi0 at k0. In Omega1,
v = K~ psi0 + S~ phi0 + lambda1 K~ psi1 + S~ phi1 at k1, and in Omega2,
w = K~ psi1 + S~ phi1 + V w at k2. The unknown u (plane wave or Omega0
source) or v (Omega1 source) is the scattered part; the other layers
carry the total field.
"""

import logging

import numpy as np
import pandas as pd
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import LayerId, OperatorKinds, Unknowns
from layered_scatter.far_field import FarField, default_angles
from layered_scatter.geometry import classify_points
from layered_scatter.medium import PointSource
from layered_scatter.potentials import assemble_volume_op, evaluate_layer_potential

logger = logging.getLogger(__name__)


class InteriorField:
    """A field in the obstacle: values at the mesh nodes and Cauchy data on the S1 nodes."""

    def __init__(self, k2, mesh, s1, values, trace, normal_trace):
        self.k2 = k2
        self.mesh = mesh
        self.s1 = s1
        self.values = np.asarray(values, dtype=complex)
        self.trace = np.asarray(trace, dtype=complex)
        self.normal_trace = np.asarray(normal_trace, dtype=complex)

    @property
    def n_values(self):
        return self.mesh.n_values

    def scaled(self, factor):
        return InteriorField(self.k2, self.mesh, self.s1, factor * self.values, factor * self.trace,
                             factor * self.normal_trace)


class DensitySolution:
    """Densities psi0, phi0 (S0), psi1, phi1 (S1) and the obstacle field w at the mesh nodes."""

    def __init__(self, solver, solution, residual, incident=None):
        """Init method

        :param solver: TransmissionSolver that produced the solution.
        :param solution: Solution vector ordered by solver.index_map.
        :param residual: Relative residual of the discrete system.
        :param incident: Incident field, None when solved from raw transmission data.
        """
        self._solver = solver
        self.config = solver.config
        self.s0 = solver.s0
        self.s1 = solver.s1
        self.mesh = solver.mesh
        self.condition_estimate = solver.condition_estimate
        self.residual = float(residual)
        self.incident = incident
        self.vector = np.array(solution, dtype=complex)
        self.vector.setflags(write=False)
        index_map = solver.index_map
        self.psi0 = self.vector[index_map[Unknowns.Psi0]]
        self.phi0 = self.vector[index_map[Unknowns.Phi0]]
        self.psi1 = self.vector[index_map[Unknowns.Psi1]]
        self.phi1 = self.vector[index_map[Unknowns.Phi1]]
        if Unknowns.W in index_map:
            self.w_grid = self.vector[index_map[Unknowns.W]]
        else:
            self.w_grid = np.zeros(0, dtype=complex)

    @property
    def source_layer(self):
        """Layer whose field the incident wave is added to."""
        if isinstance(self.incident, PointSource):
            return self.incident.layer
        return LayerId.Omega0

    def _terms(self, layer, derivative):
        c = self.config
        double = OperatorKinds.Hypersingular if derivative else OperatorKinds.DoubleLayer
        single = OperatorKinds.AdjointDoubleLayer if derivative else OperatorKinds.SingleLayer
        if layer == LayerId.Omega0:
            return [(double, self.s0, self.psi0, c.k0, c.lambda0), (single, self.s0, self.phi0, c.k0, 1.0)]
        if layer == LayerId.Omega1:
            return [(double, self.s0, self.psi0, c.k1, 1.0), (single, self.s0, self.phi0, c.k1, 1.0),
                    (double, self.s1, self.psi1, c.k1, c.lambda1), (single, self.s1, self.phi1, c.k1, 1.0)]
        return [(double, self.s1, self.psi1, c.k2, 1.0), (single, self.s1, self.phi1, c.k2, 1.0)]

    def _layer_values(self, layer, points, normals):
        values = np.zeros(len(points), dtype=complex)
        for kind, curve, density, k, factor in self._terms(layer, normals is not None):
            values += factor * evaluate_layer_potential(kind, curve, density, k, points, normals)
        if layer == LayerId.Omega2 and self.w_grid.size:
            volume = assemble_volume_op(self.mesh, self.config.k2, targets=points, normals=normals)
            values += volume.apply(self.w_grid)
        return values

    def _evaluate(self, points, normals, total):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if normals is not None:
            normals = np.atleast_2d(np.asarray(normals, dtype=float))
        layers = classify_points(points, self.s0, self.s1)
        values = np.zeros(len(points), dtype=complex)
        for layer in LayerId.ALL:
            mask = layers == layer
            if np.any(mask):
                values[mask] = self._layer_values(layer, points[mask],
                                                  None if normals is None else normals[mask])
        if total:
            if self.incident is None:
                raise UserConfigValidationException("the total field needs a solution of an incident field")
            mask = layers == self.source_layer
            if np.any(mask):
                k = self.config.wavenumber(self.source_layer)
                if normals is None:
                    values[mask] += self.incident.value(points[mask], k)
                else:
                    values[mask] += self.incident.normal_derivative(points[mask], normals[mask], k)
        return values

    def evaluate_field(self, points, total=False):
        """Field values at points in any layer.

        :param points: (P, 2) evaluation points.
        :param total: Add the incident field inside its source layer.
        :raises AmbiguousPoint: for points on an interface.
        """
        return self._evaluate(points, None, total)

    def evaluate_normal_derivative(self, points, normals, total=False):
        """Derivatives of the field along the given unit normals."""
        return self._evaluate(points, normals, total)

    def interior_traces(self):
        """Interior limits (w, dw/dnu) on the S1 nodes.

        w = (K - 1/2) psi1 + S phi1 + V w and
        dw/dnu = T psi1 + (K' + 1/2) phi1 + V' w, all at k2.
        """
        ops = self._solver.operators
        trace = ops['K12'] @ self.psi1 - 0.5 * self.psi1 + ops['S12'] @ self.phi1
        normal_trace = ops['T12'] @ self.psi1 + ops["K'12"] @ self.phi1 + 0.5 * self.phi1
        if self.w_grid.size:
            trace = trace + ops['V_S1'] @ self.w_grid
            normal_trace = normal_trace + ops["V'_S1"] @ self.w_grid
        return trace, normal_trace

    def interior_field(self):
        trace, normal_trace = self.interior_traces()
        return InteriorField(self.config.k2, self.mesh, self.s1, self.w_grid, trace, normal_trace)

    def far_field(self, angles=None):
        """Far field pattern of the Omega0 field.

        u_inf(x) = gamma0 sum_j [lambda0 (-i k0 nu_j . x) psi0_j + phi0_j] exp(-i k0 x . y_j) w_j
        with gamma0 = exp(i pi/4) / sqrt(8 pi k0).
        """
        angles = default_angles() if angles is None else np.atleast_1d(np.asarray(angles, dtype=float))
        k0 = self.config.k0
        directions = np.column_stack((np.cos(angles), np.sin(angles)))
        gamma0 = np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi * k0)
        phase = np.exp(-1j * k0 * directions @ self.s0.nodes.T)
        normal_factor = -1j * k0 * (directions @ self.s0.normals.T)
        integrand = (self.config.lambda0 * normal_factor * self.psi0[None, :] + self.phi0[None, :]) * phase
        return FarField(angles, gamma0 * integrand @ self.s0.weights)

    def densities_frame(self):
        """Long table of the solution vector with columns unknown, index, re, im."""
        frames = []
        for name, block in self._solver.index_map.items():
            values = self.vector[block]
            frames.append(pd.DataFrame({'unknown': name, 'index': np.arange(len(values)),
                                        're': values.real, 'im': values.imag}))
        return pd.concat(frames, ignore_index=True)


def evaluate_field(sol, points, total=False):
    return sol.evaluate_field(points, total=total)


def far_field(sol, angles=None):
    return sol.far_field(angles)
