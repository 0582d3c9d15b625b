"""Exact symbolic checks for two-parameter quantum planes and GL_{p,q'}(2)."""

from .coefficients import Coefficient, P
from .freealg import NCPoly, RewriteSystem, normal_order

__version__ = "0.1.0"

__all__ = ["Coefficient", "NCPoly", "P", "RewriteSystem", "normal_order", "__version__"]
