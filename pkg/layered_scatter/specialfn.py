"""Bessel and Hankel functions of integer order on positive real arguments.

Thin, domain-checked wrappers around :mod:`scipy.special`. Every routine
accepts scalars or numpy arrays and broadcasts like a ufunc. Orders must be
non-negative integers not larger than
:attr:`layered_scatter.constants.Thresholds.MAX_BESSEL_ORDER`; Y and H are
only defined for strictly positive arguments.
"""
import numpy as np
from scipy import special

from layered_scatter.constants import Thresholds
from layered_scatter.utils.exception import DomainError


def _check_order(order):
    order = np.asarray(order)
    if not np.all(np.isfinite(order)) or np.any(order != np.round(order)):
        raise DomainError("Bessel order must be an integer, got {0}".format(order))
    if np.any(order < 0) or np.any(order > Thresholds.MAX_BESSEL_ORDER):
        raise DomainError("Bessel order must lie in [0, {0}], got {1}".format(
            Thresholds.MAX_BESSEL_ORDER, order))


def _check_argument(x, strictly_positive):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Bessel argument must be finite")
    if strictly_positive and np.any(x <= 0.0):
        raise DomainError("Bessel argument must be > 0 for Y and H, got min {0}".format(np.min(x)))
    if not strictly_positive and np.any(x < 0.0):
        raise DomainError("Bessel argument must be >= 0, got min {0}".format(np.min(x)))
    return x


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x) for x >= 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=False)
    return special.jv(order, x)


def bessel_y(order, x):
    """Bessel function of the second kind Y_order(x) for x > 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=True)
    return special.yv(order, x)


def hankel1(order, x):
    """Hankel function of the first kind H_order(x) = J_order(x) + i Y_order(x) for x > 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=True)
    return special.jv(order, x) + 1j * special.yv(order, x)


def bessel_j_derivative(order, x):
    """Derivative J'_order(x) for x >= 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=False)
    return special.jvp(order, x)


def bessel_y_derivative(order, x):
    """Derivative Y'_order(x) for x > 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=True)
    return special.yvp(order, x)


def hankel1_derivative(order, x):
    """Derivative H'_order(x) for x > 0."""
    _check_order(order)
    x = _check_argument(x, strictly_positive=True)
    return special.jvp(order, x) + 1j * special.yvp(order, x)
