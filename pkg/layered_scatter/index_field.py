"""Module pointing to the different implementations of the IndexField class

The refractive index n of the obstacle is sampled on the volume mesh; the
front class picks the implementation from the index_interfaces subpackage.
"""
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import IndexFieldKinds
from layered_scatter.index_interfaces.base_index_field import _BaseIndexField


class IndexField(_BaseIndexField):
    """Refractive index of the inhomogeneous obstacle."""

    def __init__(self, **params):
        """Init method

        :param **params: a dictionary of required parameters, 'kind' among IndexFieldKinds.ALL.
        """
        self.decide_implementation_type(params)

    def decide_implementation_type(self, params):
        """Decides the index implementation from its kind."""
        self.__class__ = decide(params)
        self.__init__(params)


def decide(params):
    """Decides the IndexField implementation class from params['kind'].

    To add new index fields, add the class in the index_interfaces
    subpackage and import-and-return it in an elif branch below.
    """
    kind = params.get('kind', IndexFieldKinds.Constant)
    if kind == IndexFieldKinds.Constant:
        from layered_scatter.index_interfaces.constant_index_field import ConstantIndexField
        return ConstantIndexField
    elif kind == IndexFieldKinds.RadialBump:
        from layered_scatter.index_interfaces.radial_bump_index_field import RadialBumpIndexField
        return RadialBumpIndexField
    elif kind == IndexFieldKinds.Tabulated:
        from layered_scatter.index_interfaces.tabulated_index_field import TabulatedIndexField
        return TabulatedIndexField
    raise UserConfigValidationException(
        "index field kind should be one of {0}, got {1}".format(IndexFieldKinds.ALL, kind))
