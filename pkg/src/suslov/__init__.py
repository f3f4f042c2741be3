"""Geometric integrators for the Suslov problem on SO(3).

Two discrete Lagrange-d'Alembert schemes are provided: ``scheme_mv`` uses the
matrix-trace discrete Lagrangian, which is not a consistent discretisation,
and ``scheme_cay`` reads the continuous Lagrangian through the Cayley map.
"""

from .errors import SuslovError
from .model import GENERIC, GENERIC_M0, SPECIAL, SPECIAL_M0, InertiaTensor, Model, build_model

__version__ = "0.1.0"

__all__ = ["SuslovError", "GENERIC", "GENERIC_M0", "SPECIAL", "SPECIAL_M0", "InertiaTensor",
           "Model", "build_model", "__version__"]
