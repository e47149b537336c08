"""Finite-field hypergeometric character sums, curve-counting oracles, and
Hecke-operator trace formulas for the arithmetic triangle groups of the
quaternion discriminant-6 family.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as kernel_backend  # noqa: F401
