"""Nystrom discretisation of the layer and volume potentials of the 2D Helmholtz equation.

All kernels use the outgoing fundamental solution Phi_k(x, y) = (i/4) H0(k|x - y|).
Matrices map nodal density values to nodal (or pointwise) potential values
with the quadrature weights already folded in.

On-curve operators with source == target split the kernel as
A(t, tau) ln(4 sin^2((t - tau)/2)) + B(t, tau) and integrate the logarithmic
part with the exact trapezoid log weights. The hypersingular operator is
reduced to tangential derivatives of the single layer (Maue's identity).
Every other block (cross-curve, off-curve, volume) uses the plain
trapezoid rule of the smooth kernel.
"""

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import OperatorKinds, Thresholds
from layered_scatter.specialfn import bessel_j, hankel1
from layered_scatter.utils.exception import PointTooCloseWarning, SingularGeometry

logger = logging.getLogger(__name__)

_ROW_BLOCK = 256


def _check_kind(kind):
    if kind not in OperatorKinds.ALL:
        raise UserConfigValidationException(
            "operator kind should be one of {0}, got {1}".format(OperatorKinds.ALL, kind))


def _pairwise(targets, sources):
    d = targets[:, None, :] - sources[None, :, :]
    return d, np.hypot(d[..., 0], d[..., 1])


def _dot(normals, d):
    """(P, 2) normals against (P, Q, 2) differences, or (Q, 2) normals broadcast over sources."""
    return d[..., 0] * normals[..., 0] + d[..., 1] * normals[..., 1]


def single_layer_kernel(k, targets, sources):
    """Phi_k(x, y) for every target/source pair, shape (P, Q)."""
    _, r = _pairwise(np.atleast_2d(targets), np.atleast_2d(sources))
    return 0.25j * hankel1(0, k * r)


def double_layer_kernel(k, targets, sources, source_normals):
    """Normal derivative at the source, d Phi_k(x, y) / d nu(y)."""
    d, r = _pairwise(np.atleast_2d(targets), np.atleast_2d(sources))
    return 0.25j * k * hankel1(1, k * r) * _dot(source_normals[None, :, :], d) / r


def adjoint_double_layer_kernel(k, targets, target_normals, sources):
    """Normal derivative at the target, d Phi_k(x, y) / d nu(x)."""
    d, r = _pairwise(np.atleast_2d(targets), np.atleast_2d(sources))
    return -0.25j * k * hankel1(1, k * r) * _dot(target_normals[:, None, :], d) / r


def hypersingular_kernel(k, targets, target_normals, sources, source_normals):
    """Mixed second derivative d^2 Phi_k(x, y) / d nu(x) d nu(y) away from the diagonal."""
    d, r = _pairwise(np.atleast_2d(targets), np.atleast_2d(sources))
    kr = k * r
    h0, h1 = hankel1(0, kr), hankel1(1, kr)
    nx_ny = target_normals[:, None, 0] * source_normals[None, :, 0] + \
        target_normals[:, None, 1] * source_normals[None, :, 1]
    nx_d = _dot(target_normals[:, None, :], d)
    ny_d = _dot(source_normals[None, :, :], d)
    return 0.25j * k * (h1 / r * nx_ny + nx_d * ny_d / r ** 2 * (k * h0 - 2.0 * h1 / r))


def log_quadrature_weights(n_nodes):
    """Weights R_j(t_i) of the trapezoid rule for integrands ln(4 sin^2((t_i - tau)/2)) f(tau).

    :param n_nodes: Even node count N = 2n.
    :returns: (N, N) circulant matrix.
    """
    if n_nodes % 2 != 0:
        raise UserConfigValidationException("log quadrature needs an even node count, got {0}".format(n_nodes))
    n = n_nodes // 2
    t = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    m = np.arange(1, n)
    row = -(2.0 * np.pi / n) * (np.cos(np.outer(t, m)) @ (1.0 / m)) - (np.pi / n ** 2) * np.cos(n * t)
    index = (np.arange(n_nodes)[:, None] - np.arange(n_nodes)[None, :]) % n_nodes
    return row[index]


def fourier_differentiation_matrix(n_nodes):
    """Spectral derivative of the trigonometric interpolant at equispaced nodes (N even)."""
    t = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    diff = t[:, None] - t[None, :]
    sign = (-1.0) ** (np.arange(n_nodes)[:, None] - np.arange(n_nodes)[None, :])
    off = ~np.eye(n_nodes, dtype=bool)
    matrix = np.zeros((n_nodes, n_nodes))
    matrix[off] = 0.5 * sign[off] / np.tan(0.5 * diff[off])
    return matrix


def _log_kernel(curve):
    t = curve.parameters
    off = ~np.eye(curve.n_nodes, dtype=bool)
    log_term = np.zeros((curve.n_nodes, curve.n_nodes))
    log_term[off] = np.log(4.0 * np.sin(0.5 * (t[:, None] - t[None, :])[off]) ** 2)
    return off, log_term


def _self_single_layer(curve, k):
    n = curve.n_nodes // 2
    off, log_term = _log_kernel(curve)
    _, r = _pairwise(curve.nodes, curve.nodes)
    jac = curve.jacobians
    m_full = np.zeros(r.shape, dtype=complex)
    m_full[off] = 0.25j * hankel1(0, k * r[off])
    m_full *= jac[None, :]
    m1 = -bessel_j(0, k * r) * jac[None, :] / (4.0 * np.pi)
    m2 = m_full - m1 * log_term
    diag = (0.25j - np.euler_gamma / (2.0 * np.pi) - np.log(0.5 * k * jac) / (2.0 * np.pi)) * jac
    m2[np.diag_indices(curve.n_nodes)] = diag
    return log_quadrature_weights(curve.n_nodes) * m1 + (np.pi / n) * m2


def _self_double_layer(curve, k, adjoint):
    n = curve.n_nodes // 2
    off, log_term = _log_kernel(curve)
    d, r = _pairwise(curve.nodes, curve.nodes)
    jac = curve.jacobians
    if adjoint:
        projection = -_dot(curve.normals[:, None, :], d)
    else:
        projection = _dot(curve.normals[None, :, :], d)
    ratio = np.zeros(r.shape)
    ratio[off] = projection[off] / r[off]
    l_full = np.zeros(r.shape, dtype=complex)
    l_full[off] = 0.25j * k * hankel1(1, k * r[off]) * ratio[off]
    l_full *= jac[None, :]
    l1 = -k * bessel_j(1, k * r) * ratio * jac[None, :] / (4.0 * np.pi)
    l2 = l_full - l1 * log_term
    # both double layers tend to -curvature |x'| / (4 pi) on the diagonal
    l2[np.diag_indices(curve.n_nodes)] = -curve.curvatures * jac / (4.0 * np.pi)
    return log_quadrature_weights(curve.n_nodes) * l1 + (np.pi / n) * l2


def _self_hypersingular(curve, k):
    single = _self_single_layer(curve, k)
    derivative = fourier_differentiation_matrix(curve.n_nodes)
    tangential = derivative / curve.jacobians[:, None]
    normal_products = curve.normals @ curve.normals.T
    return tangential @ single @ tangential + k ** 2 * single * normal_products


def _row_blocks(n_rows):
    return [slice(start, min(start + _ROW_BLOCK, n_rows)) for start in range(0, n_rows, _ROW_BLOCK)]


def _fill_rows(matrix, fill_block, threads):
    """Fill matrix by independent row blocks, optionally on a thread pool."""
    blocks = _row_blocks(matrix.shape[0])
    if threads is None or threads <= 1 or len(blocks) == 1:
        for block in blocks:
            matrix[block] = fill_block(block)
        return matrix
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for block, values in zip(blocks, pool.map(fill_block, blocks)):
            matrix[block] = values
    return matrix


def layer_potential_matrix(kind, source, k, points, normals=None, threads=1):
    """Trapezoid-rule matrix of a layer potential from the nodes of source to arbitrary points.

    :param kind: One of OperatorKinds.ALL.
    :param source: Source curve.
    :param k: Wavenumber.
    :param points: (P, 2) targets off the source trace.
    :param normals: (P, 2) unit normals at the targets, required for K' and T.
    :returns: (P, N) complex matrix.
    """
    _check_kind(kind)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if kind in OperatorKinds.NEEDS_TARGET_NORMALS:
        if normals is None:
            raise UserConfigValidationException("operator {0} needs target normals".format(kind))
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
    weights = source.weights

    def fill_block(block):
        x = points[block]
        _, r = _pairwise(x, source.nodes)
        if np.min(r) < Thresholds.TOUCHING_DISTANCE:
            raise SingularGeometry("target point coincides with a node of the source curve")
        if kind == OperatorKinds.SingleLayer:
            kernel = single_layer_kernel(k, x, source.nodes)
        elif kind == OperatorKinds.DoubleLayer:
            kernel = double_layer_kernel(k, x, source.nodes, source.normals)
        elif kind == OperatorKinds.AdjointDoubleLayer:
            kernel = adjoint_double_layer_kernel(k, x, normals[block], source.nodes)
        else:
            kernel = hypersingular_kernel(k, x, normals[block], source.nodes, source.normals)
        return kernel * weights[None, :]

    matrix = np.empty((len(points), source.n_nodes), dtype=complex)
    return _fill_rows(matrix, fill_block, threads)


class BoundaryOperator:
    """Dense Nystrom matrix of one of the layer operators S, K, K', T between two curves."""

    def __init__(self, kind, source, target, k, matrix):
        self.kind = kind
        self.source = source
        self.target = target
        self.k = k
        self.matrix = matrix

    @property
    def is_self(self):
        return self.source is self.target

    def apply(self, density):
        return self.matrix @ np.asarray(density)


def assemble_boundary_op(kind, source, target=None, k=1.0, threads=1):
    """Nystrom matrix of a layer operator.

    :param kind: One of OperatorKinds.ALL.
    :param source: Source curve carrying the density.
    :param target: Target curve, None or source itself for the on-curve operator.
    :param k: Wavenumber > 0.
    :returns: BoundaryOperator of shape (target.n_nodes, source.n_nodes).
    :raises SingularGeometry: if source and target are distinct and closer than 1e-10.
    """
    _check_kind(kind)
    if k <= 0:
        raise UserConfigValidationException("wavenumber should be positive, got {0}".format(k))
    if target is None or target is source:
        if kind == OperatorKinds.SingleLayer:
            matrix = _self_single_layer(source, k)
        elif kind == OperatorKinds.DoubleLayer:
            matrix = _self_double_layer(source, k, adjoint=False)
        elif kind == OperatorKinds.AdjointDoubleLayer:
            matrix = _self_double_layer(source, k, adjoint=True)
        else:
            matrix = _self_hypersingular(source, k)
        return BoundaryOperator(kind, source, source, k, matrix)

    from layered_scatter.geometry import curves_min_distance
    gap = curves_min_distance(source, target)
    if gap < Thresholds.TOUCHING_DISTANCE:
        raise SingularGeometry("source and target curves touch (distance {0:.3g})".format(gap))
    matrix = layer_potential_matrix(kind, source, k, target.nodes, target.normals, threads=threads)
    return BoundaryOperator(kind, source, target, k, matrix)


def evaluate_layer_potential(kind, source, density, k, points, normals=None):
    """Layer potential of a nodal density at points off the source trace.

    Kinds S and K give the single- and double-layer potentials; K' and T
    give their normal derivatives along the supplied normals.
    A PointTooCloseWarning is emitted for points within three node
    spacings of the source nodes, where the trapezoid rule loses accuracy.
    """
    density = np.asarray(density)
    if density.shape != (source.n_nodes,):
        raise UserConfigValidationException("density should have {0} entries, got {1}".format(
            source.n_nodes, density.shape))
    points = np.atleast_2d(np.asarray(points, dtype=float))
    _, r = _pairwise(points, source.nodes)
    closest = np.min(r, axis=1)
    too_close = closest < Thresholds.NEAR_FIELD_SPACINGS * source.node_spacing
    if np.any(too_close):
        warnings.warn("{0} evaluation point(s) within {1} node spacings of the {2} curve; "
                      "trapezoid accuracy degrades".format(int(np.sum(too_close)),
                                                           Thresholds.NEAR_FIELD_SPACINGS, source.kind),
                      PointTooCloseWarning)
    return layer_potential_matrix(kind, source, k, points, normals) @ density


def disk_potential(rho, a, k):
    """Volume potential of a uniform unit density on a disk of radius a.

    :param rho: Distance(s) from the disk centre.
    :param a: Disk radius (broadcast against rho).
    :param k: Wavenumber.
    :returns: (value, radial derivative) of int_{|y| < a} Phi_k(x - y) dy at |x| = rho.
    """
    rho, a = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(a, dtype=float))
    value = np.empty(rho.shape, dtype=complex)
    derivative = np.empty(rho.shape, dtype=complex)
    outside = rho >= a
    inside = ~outside
    if np.any(outside):
        ao, ro = a[outside], rho[outside]
        factor = 0.5j * np.pi * ao * bessel_j(1, k * ao)
        value[outside] = factor / k * hankel1(0, k * ro)
        derivative[outside] = -factor * hankel1(1, k * ro)
    if np.any(inside):
        ai, ri = a[inside], rho[inside]
        factor = 0.5j * np.pi * ai * hankel1(1, k * ai)
        value[inside] = factor / k * bessel_j(0, k * ri) - 1.0 / k ** 2
        derivative[inside] = -factor * bessel_j(1, k * ri)
    return value, derivative


class VolumeOperator:
    """Dense matrix of the volume potential V, or of its normal derivative V', on a mesh."""

    VALUE = 'value'
    NORMAL_DERIVATIVE = 'normal_derivative'

    def __init__(self, k2, mesh, contrast, targets, normals, matrix):
        self.k2 = k2
        self.mesh = mesh
        self.contrast = contrast
        self.targets = targets
        self.normals = normals
        self.matrix = matrix

    @property
    def kind(self):
        return self.VALUE if self.normals is None else self.NORMAL_DERIVATIVE

    def apply(self, values):
        return self.matrix @ np.asarray(values)


def assemble_volume_op(mesh, k2, targets=None, normals=None, threads=1):
    """Matrix of (V w)(x) = k2^2 int (n - 1) Phi_k2(x, y) w(y) dy, or of its normal derivative.

    Off-diagonal entries are point values Phi(x, y_q) m_q w_q with the
    contrast m = k2^2 (n - 1). A target within the equal-area disk of a
    node (radius sqrt(w_q / pi)) uses the closed-form disk potential.

    :param mesh: VolumeMesh.
    :param k2: Obstacle wavenumber.
    :param targets: (P, 2) targets, defaults to the mesh nodes.
    :param normals: (P, 2) unit normals; when given the rows hold d/d nu(x) instead of values.
    :returns: VolumeOperator of shape (P, M).
    """
    targets = mesh.nodes if targets is None else np.atleast_2d(np.asarray(targets, dtype=float))
    if normals is not None:
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
    contrast = mesh.contrast(k2)
    matrix = np.zeros((len(targets), mesh.size), dtype=complex)
    active = np.flatnonzero(contrast != 0.0)
    if len(active) == 0:
        return VolumeOperator(k2, mesh, contrast, targets, normals, matrix)

    sources = mesh.nodes[active]
    weights = mesh.weights[active]
    radii = mesh.cell_radius[active]
    scale = contrast[active]

    def fill_block(block):
        d, rho = _pairwise(targets[block], sources)
        near = rho < radii[None, :]
        far = ~near
        entries = np.empty(rho.shape, dtype=complex)
        near_value, near_derivative = disk_potential(rho[near], np.broadcast_to(radii, rho.shape)[near], k2)
        if normals is None:
            entries[far] = 0.25j * hankel1(0, k2 * rho[far]) * np.broadcast_to(weights, rho.shape)[far]
            entries[near] = near_value
        else:
            projection = _dot(normals[block][:, None, :], d)
            entries[far] = -0.25j * k2 * hankel1(1, k2 * rho[far]) * projection[far] / rho[far] * \
                np.broadcast_to(weights, rho.shape)[far]
            direction = np.zeros(rho.shape)
            centred = near & (rho > 0.0)
            direction[centred] = projection[centred] / rho[centred]
            entries[near] = near_derivative * direction[near]
        full = np.zeros((rho.shape[0], mesh.size), dtype=complex)
        full[:, active] = entries * scale[None, :]
        return full

    _fill_rows(matrix, fill_block, threads)
    logger.debug(f"volume operator {matrix.shape} assembled over {len(active)} contrast nodes")
    return VolumeOperator(k2, mesh, contrast, targets, normals, matrix)
