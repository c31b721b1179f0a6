"""Reference solutions computed without the boundary-integral machinery.

Concentric circles with a constant index are solved mode by mode in
polar coordinates. Transparent interfaces reduce the problem to the
classical Lippmann-Schwinger equation, solved here on an independent
node-centred grid. Both share only :mod:`layered_scatter.specialfn`
with the main solver.
"""

import logging

import numpy as np
from raiutils.exceptions import UserConfigValidationException
from scipy import integrate

from layered_scatter.constants import IndexFieldKinds, LayerId, Thresholds
from layered_scatter.density_solution import InteriorField
from layered_scatter.far_field import FarField, default_angles
from layered_scatter.medium import PlaneWave, PointSource
from layered_scatter.specialfn import (bessel_j, bessel_j_derivative, bessel_y, bessel_y_derivative, hankel1,
                                       hankel1_derivative)
from layered_scatter.utils.exception import AmbiguousPoint, MeshTooCoarse, ModeSystemSingular

logger = logging.getLogger(__name__)

_EQUILIBRATION_SWEEPS = 8


def _gamma(k):
    return np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi * k)


def _signed(function, order, x):
    """Integer-order Bessel function continued to negative orders, Z_{-m} = (-1)^m Z_m."""
    value = function(abs(order), x)
    return value if order >= 0 else (-1.0) ** order * value


class ConcentricConfig:
    """Circles of radii r0 > r1 centred at the origin with a real constant index in the core."""

    def __init__(self, r0, r1, config, max_order=40):
        """Init method

        :param r0: Radius of S0.
        :param r1: Radius of S1, 0 < r1 < r0.
        :param config: MediumConfig whose index field is a real positive constant.
        :param max_order: Largest angular order M_max of the series.
        """
        if not (0.0 < r1 < r0):
            raise UserConfigValidationException("radii should satisfy r0 > r1 > 0, got {0}, {1}".format(r0, r1))
        field = config.index_field
        if field.kind != IndexFieldKinds.Constant or field.value.imag != 0.0:
            raise UserConfigValidationException("the series oracle supports a real constant index only")
        if max_order < 1 or max_order > Thresholds.MAX_BESSEL_ORDER:
            raise UserConfigValidationException(
                "max_order should lie in [1, {0}], got {1}".format(Thresholds.MAX_BESSEL_ORDER, max_order))
        self.r0 = float(r0)
        self.r1 = float(r1)
        self.config = config
        self.n = float(field.value.real)
        self.max_order = int(max_order)

    @property
    def kappa(self):
        """Wavenumber k2 sqrt(n) of the core."""
        return self.config.k2 * np.sqrt(self.n)

    def layer_of(self, point):
        r = float(np.hypot(*np.asarray(point, dtype=float)))
        if min(abs(r - self.r0), abs(r - self.r1)) < Thresholds.INTERFACE_DISTANCE:
            raise AmbiguousPoint("point at radius {0} lies on an interface".format(r))
        if r > self.r0:
            return LayerId.Omega0
        return LayerId.Omega1 if r > self.r1 else LayerId.Omega2


def _mode_matrix(cfg, order):
    c = cfg.config
    k0, k1, kappa = c.k0, c.k1, cfg.kappa
    r0, r1 = cfg.r0, cfg.r1
    return np.array([
        [hankel1(order, k0 * r0), -bessel_j(order, k1 * r0), -bessel_y(order, k1 * r0), 0.0],
        [k0 * hankel1_derivative(order, k0 * r0), -c.lambda0 * k1 * bessel_j_derivative(order, k1 * r0),
         -c.lambda0 * k1 * bessel_y_derivative(order, k1 * r0), 0.0],
        [0.0, bessel_j(order, k1 * r1), bessel_y(order, k1 * r1), -bessel_j(order, kappa * r1)],
        [0.0, k1 * bessel_j_derivative(order, k1 * r1), k1 * bessel_y_derivative(order, k1 * r1),
         -c.lambda1 * kappa * bessel_j_derivative(order, kappa * r1)],
    ], dtype=complex)


def _incident_coefficients(cfg, inc, order):
    """Expansion coefficient of the incident wave in the order-th angular mode.

    Plane waves and Omega0 sources are expanded in J_m(k0 r) near S0. An
    Omega1 source contributes beta H_m(k1 r) outside |z| and delta J_m(k1 r) inside.
    """
    if isinstance(inc, PlaneWave):
        theta_d = np.arctan2(inc.direction[1], inc.direction[0])
        return inc.amplitude * 1j ** order * np.exp(-1j * order * theta_d), None
    rho = float(np.hypot(*inc.source))
    theta = np.arctan2(inc.source[1], inc.source[0])
    phase = inc.amplitude * 0.25j * np.exp(-1j * order * theta)
    if inc.layer == LayerId.Omega0:
        return phase * _signed(hankel1, order, cfg.config.k0 * rho), None
    k1 = cfg.config.k1
    return phase * _signed(bessel_j, order, k1 * rho), phase * _signed(hankel1, order, k1 * rho)


def _mode_rhs(cfg, inc, order):
    c = cfg.config
    k0, k1, r0, r1 = c.k0, c.k1, cfg.r0, cfg.r1
    first, second = _incident_coefficients(cfg, inc, order)
    m = abs(order)
    if second is None:
        return np.array([-first * bessel_j(m, k0 * r0), -first * k0 * bessel_j_derivative(m, k0 * r0), 0.0, 0.0])
    beta, delta = first, second
    return np.array([beta * hankel1(m, k1 * r0), c.lambda0 * beta * k1 * hankel1_derivative(m, k1 * r0),
                     -delta * bessel_j(m, k1 * r1), -delta * k1 * bessel_j_derivative(m, k1 * r1)])


def _equilibrate(matrix):
    """Alternating square-root row/column scaling; returns scaled matrix and both scale vectors."""
    rows = np.ones(matrix.shape[0])
    cols = np.ones(matrix.shape[1])
    scaled = matrix.copy()
    for _ in range(_EQUILIBRATION_SWEEPS):
        row_scale = np.sqrt(np.max(np.abs(scaled), axis=1))
        col_scale = np.sqrt(np.max(np.abs(scaled), axis=0))
        scaled = scaled / row_scale[:, None] / col_scale[None, :]
        rows /= row_scale
        cols /= col_scale
    return scaled, rows, cols


def _check_incident(cfg, inc):
    if isinstance(inc, PlaneWave):
        return
    if not isinstance(inc, PointSource):
        raise UserConfigValidationException("incident field should be a PlaneWave or a PointSource")
    if cfg.layer_of(inc.source) != inc.layer:
        raise UserConfigValidationException("point source {0} is not in the declared layer {1}".format(
            inc.source.tolist(), inc.layer))


def series_coefficients(cfg, inc):
    """Mode coefficients {m: (a, b, c, e)} of the series solution.

    The unknowns multiply H_m(k0 r) in Omega0, J_m(k1 r) and Y_m(k1 r) in
    Omega1 and J_m(k2 sqrt(n) r) in Omega2. Orders |m| = 0, 1, ... are added
    until two successive orders contribute less than 1e-13 of the running
    total, or up to max_order.

    :raises ModeSystemSingular: if an equilibrated mode system has condition above 1e13.
    """
    _check_incident(cfg, inc)
    coefficients = {}
    scale = 0.0
    quiet = 0
    for m in range(cfg.max_order + 1):
        scaled, rows, cols = _equilibrate(_mode_matrix(cfg, m))
        condition = np.linalg.cond(scaled)
        if not np.isfinite(condition) or condition > Thresholds.MODE_CONDITION_LIMIT:
            raise ModeSystemSingular("mode {0} system has condition {1:.3e}: resonant configuration".format(
                m, condition))
        contribution = 0.0
        for order in sorted({m, -m}):
            solution = cols * np.linalg.solve(scaled, rows * _mode_rhs(cfg, inc, order))
            coefficients[order] = solution
            contribution += abs(solution[0])
        scale = max(scale, sum(abs(value[0]) for value in coefficients.values()))
        quiet = quiet + 1 if contribution <= Thresholds.SERIES_TAIL * max(scale, Thresholds.NEGLIGIBLE_SCALE) else 0
        if quiet >= 2:
            break
    logger.debug(f"series truncated at order {max(coefficients)} (max_order {cfg.max_order})")
    return coefficients


def series_far_field(cfg, inc, angles=None):
    """Far field u_inf(theta) = sum_m a_m sqrt(2 / (pi k0)) exp(-i pi/4) (-i)^m exp(i m theta)."""
    angles = default_angles() if angles is None else np.atleast_1d(np.asarray(angles, dtype=float))
    k0 = cfg.config.k0
    values = np.zeros(len(angles), dtype=complex)
    for order, coeff in series_coefficients(cfg, inc).items():
        values += coeff[0] * (-1j) ** order * np.exp(1j * order * angles)
    return FarField(angles, np.sqrt(2.0 / (np.pi * k0)) * np.exp(-0.25j * np.pi) * values)


def series_field(cfg, inc, points):
    """Series near field with the solver's convention: u in Omega0, v in Omega1 and w in Omega2.

    u is scattered for plane waves and Omega0 sources and total for Omega1
    sources; v is scattered for Omega1 sources and total otherwise.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    c = cfg.config
    coefficients = series_coefficients(cfg, inc)
    values = np.zeros(len(points), dtype=complex)
    for index, point in enumerate(points):
        layer = cfg.layer_of(point)
        r = float(np.hypot(*point))
        theta = np.arctan2(point[1], point[0])
        total = 0.0j
        for order, (a, b, cc, e) in coefficients.items():
            if layer == LayerId.Omega0:
                radial = a * _signed(hankel1, order, c.k0 * r)
            elif layer == LayerId.Omega1:
                radial = b * _signed(bessel_j, order, c.k1 * r) + cc * _signed(bessel_y, order, c.k1 * r)
            else:
                radial = e * _signed(bessel_j, order, cfg.kappa * r)
            total += radial * np.exp(1j * order * theta)
        values[index] = total
    return values


def series_transmission_residual(cfg, inc, n_angles=100):
    """Largest violation of the four transmission conditions at n_angles points of each circle."""
    c = cfg.config
    k0, k1, kappa = c.k0, c.k1, cfg.kappa
    r0, r1 = cfg.r0, cfg.r1
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    sums = np.zeros((8, n_angles), dtype=complex)
    for order, (a, b, cc, e) in series_coefficients(cfg, inc).items():
        first, second = _incident_coefficients(cfg, inc, order)
        harmonic = np.exp(1j * order * theta)

        def z(function, x):
            # Z'_{-m} = (-1)^m Z'_m
            return _signed(function, order, x)

        outer0 = a * z(hankel1, k0 * r0)
        outer0_dr = a * k0 * z(hankel1_derivative, k0 * r0)
        inner0 = b * z(bessel_j, k1 * r0) + cc * z(bessel_y, k1 * r0)
        inner0_dr = k1 * (b * z(bessel_j_derivative, k1 * r0) + cc * z(bessel_y_derivative, k1 * r0))
        outer1 = b * z(bessel_j, k1 * r1) + cc * z(bessel_y, k1 * r1)
        outer1_dr = k1 * (b * z(bessel_j_derivative, k1 * r1) + cc * z(bessel_y_derivative, k1 * r1))
        core = e * z(bessel_j, kappa * r1)
        core_dr = e * kappa * z(bessel_j_derivative, kappa * r1)
        if second is None:
            outer0 += first * z(bessel_j, k0 * r0)
            outer0_dr += first * k0 * z(bessel_j_derivative, k0 * r0)
        else:
            inner0 += first * z(hankel1, k1 * r0)
            inner0_dr += first * k1 * z(hankel1_derivative, k1 * r0)
            outer1 += second * z(bessel_j, k1 * r1)
            outer1_dr += second * k1 * z(bessel_j_derivative, k1 * r1)
        for row, value in enumerate([outer0, inner0, outer0_dr, inner0_dr, outer1, core, outer1_dr, core_dr]):
            sums[row] += value * harmonic
    residuals = [sums[0] - sums[1], sums[2] - c.lambda0 * sums[3],
                 sums[4] - sums[5], sums[6] - c.lambda1 * sums[7]]
    return float(max(np.max(np.abs(residual)) for residual in residuals))


def free_point_source_far_field(z, k0):
    """Far field x -> gamma0 exp(-i k0 x . z) of (i/4) H0(k0 |x - z|), gamma0 = exp(i pi/4) / sqrt(8 pi k0)."""
    z = np.asarray(z, dtype=float)
    gamma0 = _gamma(k0)

    def pattern(xhat):
        xhat = np.asarray(xhat, dtype=float)
        return gamma0 * np.exp(-1j * k0 * (xhat @ z))

    return pattern


def _ls_grid(center, support_radius, h):
    count = int(np.ceil(support_radius / h))
    steps = np.arange(-count, count + 1)
    gx, gy = np.meshgrid(h * steps, h * steps, indexing='ij')
    offsets = np.column_stack((gx.ravel(), gy.ravel()))
    nodes = np.asarray(center, dtype=float) + offsets[np.hypot(offsets[:, 0], offsets[:, 1]) < support_radius]
    if len(nodes) < Thresholds.MIN_MESH_NODES:
        raise MeshTooCoarse("only {0} reference grid nodes at h={1}, need at least {2}".format(
            len(nodes), h, Thresholds.MIN_MESH_NODES))
    return nodes


def _ls_far_field(center, support_radius, h, k, n_field, direction, angles):
    nodes = _ls_grid(center, support_radius, h)
    contrast = k ** 2 * (n_field.evaluate(nodes) - 1.0)
    xhat = np.column_stack((np.cos(angles), np.sin(angles)))
    if not np.any(contrast != 0.0):
        return np.zeros(len(angles), dtype=complex)
    cell = h * h
    diff = nodes[:, None, :] - nodes[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(dist, 1.0)
    green = 0.25j * hankel1(0, k * dist) * cell
    a = h / np.sqrt(np.pi)
    np.fill_diagonal(green, 0.5j * np.pi * a / k * hankel1(1, k * a) - 1.0 / k ** 2)
    system = np.eye(len(nodes)) - green * contrast[None, :]
    incident = np.exp(1j * k * (nodes @ np.asarray(direction, dtype=float)))
    w = np.linalg.solve(system, incident)
    logger.debug(f"Lippmann-Schwinger reference with {len(nodes)} nodes at h={h}")
    return _gamma(k) * (np.exp(-1j * k * xhat @ nodes.T) @ (contrast * w)) * cell


def ls_reference(center, support_radius, h, k, n_field, direction=(1.0, 0.0), angles=None, extrapolate=False):
    """Far field of the homogeneous-background Lippmann-Schwinger equation w = u^i + V w.

    The grid is c + h (i, j) restricted to the open support disk; the self
    cell is replaced by its equal-area disk.

    :param center: Centre of the disk containing supp(n - 1).
    :param support_radius: Radius of that disk.
    :param h: Grid spacing.
    :param k: Background wavenumber.
    :param n_field: IndexField.
    :param direction: Unit incidence direction.
    :param angles: Observation angles.
    :param extrapolate: Return (4 F(h) - F(2h)) / 3 instead of F(h).
    :raises MeshTooCoarse: if fewer than 25 grid nodes fall in the support.
    """
    angles = default_angles() if angles is None else np.atleast_1d(np.asarray(angles, dtype=float))
    values = _ls_far_field(center, support_radius, h, k, n_field, direction, angles)
    if extrapolate:
        coarse = _ls_far_field(center, support_radius, 2.0 * h, k, n_field, direction, angles)
        values = (4.0 * values - coarse) / 3.0
    return FarField(angles, values)


def interior_bessel_field(k2, n, mesh, s1, order=0):
    """The core solution J_m(k2 sqrt(n) r) exp(i m theta) about the centre of s1.

    :returns: InteriorField with values on the mesh and Cauchy data on the s1 nodes.
    """
    n = float(n)
    if n <= 0:
        raise UserConfigValidationException("interior Bessel mode needs a real positive index, got {0}".format(n))
    kappa = k2 * np.sqrt(n)

    def polar(points):
        rel = np.atleast_2d(points) - s1.center
        return rel, np.hypot(rel[:, 0], rel[:, 1]), np.arctan2(rel[:, 1], rel[:, 0])

    _, r, theta = polar(mesh.nodes)
    values = bessel_j(order, kappa * r) * np.exp(1j * order * theta)
    rel, r, theta = polar(s1.nodes)
    harmonic = np.exp(1j * order * theta)
    radial = kappa * bessel_j_derivative(order, kappa * r) * harmonic
    angular = 1j * order * bessel_j(order, kappa * r) * harmonic / r
    r_hat = rel / r[:, None]
    theta_hat = np.column_stack((-r_hat[:, 1], r_hat[:, 0]))
    normal_trace = radial * np.sum(s1.normals * r_hat, axis=1) + angular * np.sum(s1.normals * theta_hat, axis=1)
    trace = bessel_j(order, kappa * r) * harmonic
    constant = {'kind': IndexFieldKinds.Constant, 'value': n}
    return InteriorField(k2, mesh.with_index(constant), s1, values, trace, normal_trace)


def disk_potential_reference(rho, a, k):
    """Adaptive-quadrature value and radial derivative of int_{|y| < a} Phi_k(x - y) dy at |x| = rho.

    The angular integral is carried out with the addition theorem,
    int_0^{2 pi} H0(k |x - y|) dphi = 2 pi J0(k s_<) H0(k s_>), and the
    radial one by scipy.integrate.quad with a breakpoint at s = rho.
    """
    rho, a = float(rho), float(a)

    def value_integrand(s):
        small, large = min(s, rho), max(s, rho)
        return bessel_j(0, k * small) * hankel1(0, k * large) * s

    def derivative_integrand(s):
        if s < rho:
            return -k * bessel_j(0, k * s) * hankel1(1, k * rho) * s
        return -k * bessel_j(1, k * rho) * hankel1(0, k * s) * s

    def complex_quad(function):
        breaks = [rho] if 0.0 < rho < a else None
        real = integrate.quad(lambda s: float(np.real(function(s))), 0.0, a, points=breaks, limit=200,
                              epsabs=1e-14, epsrel=1e-13)[0]
        imag = integrate.quad(lambda s: float(np.imag(function(s))), 0.0, a, points=breaks, limit=200,
                              epsabs=1e-14, epsrel=1e-13)[0]
        return real + 1j * imag

    factor = 0.25j * 2.0 * np.pi
    return factor * complex_quad(value_integrand), factor * complex_quad(derivative_integrand)
