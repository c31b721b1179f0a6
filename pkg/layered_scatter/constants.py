"""Constants for the layered_scatter package."""


class CurveKinds:
    Circle = 'circle'
    Ellipse = 'ellipse'
    Kite = 'kite'
    Fourier = 'fourier'

    ALL = [Circle, Ellipse, Kite, Fourier]


class IndexFieldKinds:
    Constant = 'constant'
    RadialBump = 'radial_bump'
    Tabulated = 'tabulated'

    ALL = [Constant, RadialBump, Tabulated]


class LayerId:
    """Layers of the piecewise homogeneous background.

    Omega0 is the unbounded exterior, Omega1 the bounded layer between
    the two interfaces and Omega2 the inhomogeneous obstacle.
    """
    Omega0 = 'omega0'
    Omega1 = 'omega1'
    Omega2 = 'omega2'

    ALL = [Omega0, Omega1, Omega2]
    SOURCE_LAYERS = [Omega0, Omega1]


class OperatorKinds:
    SingleLayer = 'S'
    DoubleLayer = 'K'
    AdjointDoubleLayer = "K'"
    Hypersingular = 'T'

    ALL = [SingleLayer, DoubleLayer, AdjointDoubleLayer, Hypersingular]
    NEEDS_TARGET_NORMALS = [AdjointDoubleLayer, Hypersingular]


class IncidentKinds:
    PlaneWave = 'plane_wave'
    PointSource = 'point_source'

    ALL = [PlaneWave, PointSource]


class QuadratureRules:
    Cartesian = 'cartesian'
    Polar = 'polar'

    ALL = [Cartesian, Polar]


class Unknowns:
    Psi0 = 'psi0'
    Phi0 = 'phi0'
    Psi1 = 'psi1'
    Phi1 = 'phi1'
    W = 'w'

    ALL = [Psi0, Phi0, Psi1, Phi1, W]
    BOUNDARY = [Psi0, Phi0, Psi1, Phi1]


class CheckNames:
    Completeness = 'completeness'
    Energy = 'energy'
    MixedReciprocity = 'mixed_reciprocity'
    Orthogonality = 'orthogonality'
    Reciprocity = 'reciprocity'

    ALL = [Completeness, Energy, MixedReciprocity, Orthogonality, Reciprocity]


class Commands:
    Solve = 'solve'
    FarField = 'farfield'
    Verify = 'verify'
    Convergence = 'convergence'

    ALL = [Solve, FarField, Verify, Convergence]


class ExitCodes:
    OK = 0
    CHECK_FAILED = 1
    SCHEMA_ERROR = 2
    IO_ERROR = 3
    ILL_CONDITIONED = 4
    SOLVER_ERROR = 5


class Thresholds:
    MAX_BESSEL_ORDER = 60
    INTERFACE_DISTANCE = 1e-12
    TOUCHING_DISTANCE = 1e-10
    NEAR_FIELD_SPACINGS = 3.0
    MIN_MESH_NODES = 25
    CONDITION_LIMIT = 1e12
    MODE_CONDITION_LIMIT = 1e13
    SYSTEM_RESIDUAL = 1e-10
    SERIES_TAIL = 1e-13
    NEGLIGIBLE_SCALE = 1e-10


class _SchemaVersions:
    V1 = '1.0'
    CURRENT_VERSION = V1

    ALL_VERSIONS = [V1]
