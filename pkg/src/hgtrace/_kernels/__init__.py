"""Kernel selection: compiled Cython loops when available, numpy fallbacks otherwise.

Set HGTRACE_PURE=1 to force the pure path (used by the benchmark and the
determinism tests). Both implementations produce identical results for every
exact (integer) output; floating-point character sums may differ by rounding
noise well below the snap tolerance.
"""

import os

from . import _pure

if os.environ.get("HGTRACE_PURE"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _speed as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

dlog_table = _impl.dlog_table
legendre_affine_sweep = _impl.legendre_affine_sweep
bracket_table = _impl.bracket_table
chi_sweep = _impl.chi_sweep
superelliptic_sweep = _impl.superelliptic_sweep
genus2_count_fp = _impl.genus2_count_fp
genus2_count_fp2 = _impl.genus2_count_fp2

pure = _pure
