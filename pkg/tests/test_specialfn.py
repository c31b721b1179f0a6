import numpy as np
import pytest

from layered_scatter.specialfn import (bessel_j, bessel_j_derivative, bessel_y, bessel_y_derivative, hankel1,
                                       hankel1_derivative)
from layered_scatter.utils.exception import DomainError


class TestBesselValues:
    @pytest.mark.parametrize("function, order, x, expected", [
        (bessel_j, 0, 1.0, 0.76519768655796655),
        (bessel_j, 1, 1.0, 0.44005058574493352),
        (bessel_y, 0, 1.0, 0.08825696421567696),
        (bessel_y, 1, 1.0, -0.78121282130028870),
    ])
    def test_reference_values(self, function, order, x, expected):
        assert function(order, x) == pytest.approx(expected, rel=1e-12)

    def test_hankel_combines_j_and_y(self):
        value = hankel1(1, 1.0)
        assert value.real == pytest.approx(0.4400505857, abs=1e-10)
        assert value.imag == pytest.approx(-0.7812128213, abs=1e-10)

    def test_large_argument_asymptotics(self):
        x = 100.0
        asymptotic = np.sqrt(2.0 / (np.pi * x)) * np.exp(1j * (x - 0.25 * np.pi))
        assert abs(hankel1(0, x) - asymptotic) / abs(asymptotic) < 1e-3

    def test_vectorised_arguments(self):
        x = np.linspace(0.5, 20.0, 11)
        assert bessel_j(2, x).shape == (11,)
        assert hankel1(3, x).dtype == complex


class TestBesselIdentities:
    @pytest.mark.parametrize("x", [0.5, 1.0, 5.0, 20.0, 100.0])
    def test_wronskian(self, x):
        for m in range(0, 41):
            wronskian = bessel_j(m + 1, x) * bessel_y(m, x) - bessel_j(m, x) * bessel_y(m + 1, x)
            assert wronskian == pytest.approx(2.0 / (np.pi * x), rel=1e-10)

    @pytest.mark.parametrize("function", [bessel_j, bessel_y])
    def test_recurrence(self, function):
        x = np.array([2.3, 7.1, 15.4])
        for m in range(1, 20):
            lhs = function(m + 1, x)
            rhs = (2.0 * m / x) * function(m, x) - function(m - 1, x)
            scale = np.maximum(np.abs(function(m - 1, x)), np.abs(lhs))
            np.testing.assert_array_less(np.abs(lhs - rhs), 1e-9 * scale + 1e-15)

    @pytest.mark.parametrize("derivative, function", [
        (bessel_j_derivative, bessel_j), (bessel_y_derivative, bessel_y), (hankel1_derivative, hankel1)])
    def test_derivative_recurrence(self, derivative, function):
        x = np.array([0.7, 3.0, 12.0])
        for m in range(1, 10):
            expected = 0.5 * (function(m - 1, x) - function(m + 1, x))
            np.testing.assert_allclose(derivative(m, x), expected, rtol=1e-10)


class TestBesselDomain:
    @pytest.mark.parametrize("order", [-1, 61, 1.5])
    def test_invalid_order(self, order):
        with pytest.raises(DomainError):
            bessel_j(order, 1.0)

    @pytest.mark.parametrize("function", [bessel_y, hankel1, hankel1_derivative])
    def test_zero_argument_for_singular_functions(self, function):
        with pytest.raises(DomainError):
            function(0, 0.0)

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            bessel_j(0, -1.0)

    def test_j_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(3, 0.0) == 0.0
