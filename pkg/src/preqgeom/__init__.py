"""preqgeom: chart-level verification of Dirac and Jacobi-Dirac geometry.

The package builds prequantization structures on circle bundles over Dirac
manifolds (one chart at a time), the associated precontact groupoids, and the
reduction and path machinery relating them, and verifies every defining
identity numerically at sampled points with exact second-order jets.
"""

from .chart import Chart, ChartError, Point
from .jets import Jet2, JetDomainError, JetOrderError
from .scalars import ComplexField, ScalarField, const, zero
from .tensors import (
    Bivector,
    DegreeError,
    OneForm,
    ThreeForm,
    ThreeVector,
    TwoForm,
    VectorField,
    bivector_apply,
    bivector_sharp,
    coordinate_form,
    coordinate_vector,
    directional,
    exterior_derivative,
    interior_product,
    lie_bracket,
    lie_derivative,
    pairing,
    schouten,
    schouten_ve,
    two_form_apply,
    wedge,
)

__version__ = "0.1.0"
