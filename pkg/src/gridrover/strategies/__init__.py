"""Online exploration policies, selectable by name."""

from .cellexplore import CellExplorer, explore_cellexplore, explore_cellexplore_sp, strategy_cellexplore
from .dfs import explore_dfs, strategy_dfs
from .smartdfs import (
    SplitEvent,
    classify_components,
    detect_split,
    explore_smartdfs,
    online_layer,
    strategy_smartdfs,
)

STRATEGIES = {
    "dfs": explore_dfs,
    "smartdfs": explore_smartdfs,
    "cellexplore": explore_cellexplore,
    "cellexplore-sp": explore_cellexplore_sp,
}

# Bounds each strategy is proven to meet (names from simulator.BOUND_NAMES).
# The SmartDFS bound is only claimed for simple polygons; validate_trace marks
# it inapplicable when there are holes.
STRATEGY_BOUNDS = {
    "dfs": ("dfs",),
    "smartdfs": ("smartdfs",),
    "cellexplore": ("cellexplore", "left_turns"),
    "cellexplore-sp": ("cellexplore", "left_turns"),
}


def get_strategy(name: str):
    try:
        return STRATEGIES[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}") from None


__all__ = [
    "STRATEGIES",
    "STRATEGY_BOUNDS",
    "CellExplorer",
    "SplitEvent",
    "classify_components",
    "detect_split",
    "explore_cellexplore",
    "explore_cellexplore_sp",
    "explore_dfs",
    "explore_smartdfs",
    "get_strategy",
    "online_layer",
    "strategy_cellexplore",
    "strategy_dfs",
    "strategy_smartdfs",
]
