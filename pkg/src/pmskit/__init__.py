"""
pmskit - Exact-arithmetic toolkit for probabilistic metric spaces
"""

from .config.settings import APP_NAME, VERSION

__version__ = VERSION
__author__ = APP_NAME
__description__ = "Exact-arithmetic toolkit for probabilistic metric spaces"

from .distributions import H0, HINF, DistFn, WeakTolerance, heaviside
from .tnorms import TNorm, TriangleFn, infdual_triangle, sup_triangle

__all__ = ["DistFn", "H0", "HINF", "TNorm", "TriangleFn", "WeakTolerance",
           "heaviside", "infdual_triangle", "sup_triangle"]
