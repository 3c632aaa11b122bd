"""Backend selection for the search kernels.

The compiled extension covers 5 <= p <= 127 with two-limb masks; the
pure-Python twin handles any p. Both run the identical traversal, so the
returned masks and node counts agree exactly, not just the verdicts.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _ext  # type: ignore[attr-defined]
except ImportError:
    _ext = None

BACKEND = "compiled" if _ext is not None else "pure"


def s1_witness_mask(mask: int, p: int) -> int:
    if _ext is not None and 3 <= p <= 127:
        return _ext.s1_witness_mask(mask, p)
    return _kernels_py.s1_witness_mask(mask, p)


def s1_exhaust(p: int, limit: int, node_budget: int) -> tuple[int, bool, int]:
    if _ext is not None and 5 <= p <= 127:
        return _ext.s1_exhaust(p, limit, node_budget)
    return _kernels_py.s1_exhaust(p, limit, node_budget)
