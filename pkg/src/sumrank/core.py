"""Kernel selection: compiled extension when available, pure Python otherwise.

Set SUMRANK_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

from ._core_py import BudgetExceeded  # noqa: F401  (shared exception type)
from . import _core_py

_FORCE_PURE = os.environ.get("SUMRANK_PURE_PYTHON", "") not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _core_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _core_py
else:
    _impl = _core_py

IMPLEMENTATION = _impl.IMPLEMENTATION

expand_rank = _impl.expand_rank
block_min_sum_rank = _impl.block_min_sum_rank
conv_column_distance = _impl.conv_column_distance

pure = _core_py
