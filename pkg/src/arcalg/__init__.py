"""Generalized Khovanov arc algebras, their bimodules and braid invariants."""

from .algebra import AlgebraElement, ArcAlgebra
from .errors import ArcAlgError, InvalidComplex, InvalidParameters, StructuralAssumptionFailed, TruncationError
from .fields import QQ, Field
from .weights import OrientedCircleDiagram, Weight, enumerate_weights

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "ArcAlgebra",
    "ArcAlgError",
    "Field",
    "InvalidComplex",
    "InvalidParameters",
    "OrientedCircleDiagram",
    "QQ",
    "StructuralAssumptionFailed",
    "TruncationError",
    "Weight",
    "enumerate_weights",
]
