"""Execution budgets for exhaustive routines.

Every routine that can blow up (dense group-ring products, matrix enumeration,
branch-and-bound searches) checks a budget before and during the run and raises
BudgetExceeded instead of hanging. Budgets come from an explicit argument, the
AJT_BUDGET environment variable, or the defaults below, in that order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputError

MAX_RING_ENTRIES = 2**24

PRESETS = {
    "low": 10**6,
    "default": 10**9,
    "high": 10**11,
}


@dataclass(frozen=True)
class Budget:
    """Caps for one run: dense table entries and search nodes."""

    entries: int = MAX_RING_ENTRIES
    nodes: int = PRESETS["default"]

    def check_entries(self, needed: int, what: str = "dense table") -> None:
        from .errors import BudgetExceeded

        if needed > self.entries:
            raise BudgetExceeded(
                f"{what} needs {needed} entries, budget allows {self.entries}"
            )

    def check_nodes(self, needed: int, what: str = "search") -> None:
        from .errors import BudgetExceeded

        if needed > self.nodes:
            raise BudgetExceeded(
                f"{what} needs {needed} nodes, budget allows {self.nodes}"
            )


def parse_budget(text: str) -> Budget:
    """Parse a preset name or a bare node count into a Budget."""
    text = text.strip().lower()
    if text in PRESETS:
        return Budget(nodes=PRESETS[text])
    try:
        nodes = int(text)
    except ValueError:
        raise InputError(
            f"budget must be one of {sorted(PRESETS)} or an integer, got {text!r}"
        ) from None
    if nodes <= 0:
        raise InputError("budget node count must be positive")
    return Budget(nodes=nodes)


def current_budget(override: str | Budget | None = None) -> Budget:
    """Resolve the active budget: explicit override, then AJT_BUDGET, then defaults."""
    if isinstance(override, Budget):
        return override
    if override is not None:
        return parse_budget(override)
    env = os.environ.get("AJT_BUDGET")
    if env:
        return parse_budget(env)
    return Budget()
