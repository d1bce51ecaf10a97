"""Hot-kernel selection: compiled Cython core when available, numpy fallback otherwise.

Set LONGJUMP_PURE=1 to force the fallback (used by the benchmark and parity
tests).
"""

from __future__ import annotations

import os

from . import pure
from .pure import LabelBudgetError

_impl = pure
_backend = "pure"

if not os.environ.get("LONGJUMP_PURE"):
    try:
        from . import _core

        _impl = _core
        _backend = "compiled"
    except ImportError:
        pass


def backend() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure'."""
    return _backend


pair_frontiers = _impl.pair_frontiers
min_step_lengths = _impl.min_step_lengths
pareto_labels = _impl.pareto_labels
