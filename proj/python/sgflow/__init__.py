"""Closed-form flows of a second-gradient fluid in a cylinder."""

from ._core import (
    BoundaryCondition,
    ConstraintViolation,
    DomainError,
    Error,
    LambdaSet,
    SolverError,
    ValidationError,
    bessel,
    couette,
    material,
    poiseuille,
)

STRONG = BoundaryCondition.STRONG
WEAK = BoundaryCondition.WEAK

__all__ = [
    "BoundaryCondition",
    "ConstraintViolation",
    "DomainError",
    "Error",
    "LambdaSet",
    "SolverError",
    "ValidationError",
    "STRONG",
    "WEAK",
    "bessel",
    "couette",
    "material",
    "poiseuille",
]
