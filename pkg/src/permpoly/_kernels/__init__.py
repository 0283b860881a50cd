"""Kernel backend selection: compiled extension if available, else pure Python.

Set PERMPOLY_KERNELS=pure to force the fallback (used by the benchmark and the
backend-agreement tests).
"""

import os

from . import pure as _pure

if os.environ.get("PERMPOLY_KERNELS") == "pure":
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND

tabulate_dense = _impl.tabulate_dense
tabulate_sparse = _impl.tabulate_sparse
interpolate = _impl.interpolate
compose_tables = _impl.compose_tables
is_permutation = _impl.is_permutation
invert_table = _impl.invert_table
pointwise_pow = _impl.pointwise_pow
scale_table = _impl.scale_table
add_tables = _impl.add_tables
