"""Exact-arithmetic analysis of equicontractive iterated function systems.

The package computes the net-interval structure of an IFS of finite type,
its transition matrices, the Hausdorff dimension of the attractor, local
dimensions of the associated self-similar measure at periodic points, and
bounds on the interval of local dimensions at truly essential points.
"""

from .field import FieldContext, FieldElement, FieldError

__all__ = [
    "FieldContext",
    "FieldElement",
    "FieldError",
]

__version__ = "0.1.0"
