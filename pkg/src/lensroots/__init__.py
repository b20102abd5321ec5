"""lensroots: certified root counting for mixed polynomials f(z, zbar)."""

from .errors import (
    BadParameters,
    BadWeight,
    CircleThroughZero,
    DegreeViolation,
    DuplicatePoles,
    InputError,
    LensrootsError,
    NonIsolatedZeroSet,
    NonPositivePolarDegree,
    NotAdmissible,
    NotConvenient,
    NotInClass,
    NotInvariant,
    NotSquarefree,
    RayViolation,
    UncertifiedCount,
    ZeroIsRoot,
    ZeroPolynomial,
)
from .mixedpoly import (
    MixedPolynomial,
    ONE,
    RealPair,
    Z,
    ZBAR,
    degrees,
    diff_z,
    diff_zb,
    evaluate,
    evaluate_many,
    monomial,
    realify,
    substitute_power,
    wirtinger_jacobian,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
