from .curve import Curve
from .far_field import FarField
from .index_field import IndexField
from .medium import IncidentField, MediumConfig, PlaneWave, PointSource
from .solver import TransmissionSolver, solve_direct

__all__ = ["Curve",
           "IndexField",
           "MediumConfig",
           "IncidentField",
           "PlaneWave",
           "PointSource",
           "TransmissionSolver",
           "solve_direct",
           "FarField"]
