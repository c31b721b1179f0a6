"""Module pointing to the different implementations of the Curve class

A curve is described by its kind and a handful of shape parameters; the
front class below picks the matching implementation from the
curve_interfaces subpackage and precomputes its quadrature nodes.
"""
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import CurveKinds
from layered_scatter.curve_interfaces.base_curve import _BaseCurve


class Curve(_BaseCurve):
    """Closed parametric curve used for the interfaces S0 and S1."""

    def __init__(self, **params):
        """Init method

        :param **params: a dictionary of required parameters, 'kind' among CurveKinds.ALL.
        """
        self.decide_implementation_type(params)

    def decide_implementation_type(self, params):
        """Decides the curve implementation from its kind."""
        self.__class__ = decide(params)
        self.__init__(params)


def decide(params):
    """Decides the Curve implementation class from params['kind'].

    To add new curve kinds, add the class in the curve_interfaces
    subpackage and import-and-return it in an elif branch below.
    """
    kind = params.get('kind')
    if kind == CurveKinds.Circle:
        from layered_scatter.curve_interfaces.circle_curve import CircleCurve
        return CircleCurve
    elif kind == CurveKinds.Ellipse:
        from layered_scatter.curve_interfaces.ellipse_curve import EllipseCurve
        return EllipseCurve
    elif kind == CurveKinds.Kite:
        from layered_scatter.curve_interfaces.kite_curve import KiteCurve
        return KiteCurve
    elif kind == CurveKinds.Fourier:
        from layered_scatter.curve_interfaces.fourier_curve import FourierCurve
        return FourierCurve
    raise UserConfigValidationException(
        "curve kind should be one of {0}, got {1}".format(CurveKinds.ALL, kind))
