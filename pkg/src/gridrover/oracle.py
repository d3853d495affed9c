"""Exact offline optimum for small polygons.

The shortest closed walk from ``s`` that covers every free cell is a
travelling-salesperson tour over the shortest-path metric of the grid
graph: any covering walk induces an order of first visits, and consecutive
first visits are at least their grid distance apart.  Held-Karp over that
metric is therefore exact, and is vectorized with numpy one popcount layer
at a time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .grid import Cell, GridPolygon, bfs_distances, shortest_known_path

DEFAULT_LIMIT = 16
HAMILTONIAN_LIMIT = 20
_INF = np.iinfo(np.int32).max // 4


class InstanceTooLarge(ValueError):
    """The polygon has more cells than the exact oracle accepts."""


def oracle_limit() -> int:
    """The cell cap, overridable through ``GRIDROVER_ORACLE_LIMIT``."""
    raw = os.environ.get("GRIDROVER_ORACLE_LIMIT")
    return int(raw) if raw else DEFAULT_LIMIT


@dataclass(frozen=True)
class OptimalTourResult:
    S_opt: int
    tour: tuple[Cell, ...]
    method: str = "held-karp"


def _cells_and_metric(P: GridPolygon, first: Cell) -> tuple[list[Cell], np.ndarray]:
    cells = [first] + sorted(c for c in P.free_cells if c != first)
    index = {c: i for i, c in enumerate(cells)}
    n = len(cells)
    D = np.empty((n, n), dtype=np.int32)
    for i, c in enumerate(cells):
        for d, k in bfs_distances(P.free_cells, c).items():
            D[i, index[d]] = k
    return cells, D


def _held_karp(D: np.ndarray, required: int, start: int, end: int | None) -> tuple[np.ndarray, int]:
    """DP table over subsets of ``required`` bit positions.

    ``dp[mask, v]`` is the shortest walk from ``start`` that first-visits
    exactly the required nodes in ``mask`` and ends at ``v`` (with ``v`` in
    ``mask``).  Returns the table and the optimum, closing at ``end``
    (``None`` leaves the walk open).
    """
    n = D.shape[0]
    nodes = [i for i in range(n) if required >> i & 1]
    m = len(nodes)
    sub = D[np.ix_(nodes, nodes)].astype(np.int64)
    dp = np.full((1 << m, m), _INF, dtype=np.int64)
    for j, v in enumerate(nodes):
        dp[1 << j, j] = D[start, v]
    for size in range(1, m):
        masks = np.array(
            [sum(1 << j for j in combo) for combo in combinations(range(m), size)], dtype=np.int64
        )
        # best[k, u]: cheapest extension of masks[k] by node u
        best = (dp[masks][:, :, None] + sub[None, :, :]).min(axis=1)
        for u in range(m):
            fresh = (masks >> u & 1) == 0
            targets = masks[fresh] | (1 << u)
            np.minimum.at(dp[:, u], targets, best[fresh, u])
    full = (1 << m) - 1
    if m == 0:
        return dp, 0 if end is None else int(D[start, end])
    tail = np.zeros(m, dtype=np.int64) if end is None else D[nodes, end].astype(np.int64)
    return dp, int((dp[full] + tail).min())


def _reconstruct(D: np.ndarray, dp: np.ndarray, nodes: list[int], start: int, end: int | None) -> list[int]:
    m = len(nodes)
    mask = (1 << m) - 1
    tail = np.zeros(m, dtype=np.int64) if end is None else D[nodes, end].astype(np.int64)
    v = int(np.argmin(dp[mask] + tail))
    order = []
    while True:
        order.append(nodes[v])
        prev_mask = mask & ~(1 << v)
        if prev_mask == 0:
            break
        cand = [
            u for u in range(m)
            if prev_mask >> u & 1 and dp[prev_mask, u] + D[nodes[u], nodes[v]] == dp[mask, v]
        ]
        v, mask = cand[0], prev_mask
    order.reverse()
    return order


def _expand(P: GridPolygon, cells: list[Cell], waypoints: list[int]) -> tuple[Cell, ...]:
    path = [cells[waypoints[0]]]
    for a, b in zip(waypoints, waypoints[1:]):
        path.extend(shortest_known_path(P.free_cells, cells[a], cells[b])[1:])
    return tuple(path)


def _check_size(P: GridPolygon, limit: int | None) -> None:
    limit = oracle_limit() if limit is None else limit
    if len(P.free_cells) > limit:
        raise InstanceTooLarge(f"C={len(P.free_cells)} exceeds the oracle limit {limit}")


def optimal_tour(P: GridPolygon, s: Cell | None = None, limit: int | None = None) -> OptimalTourResult:
    """Shortest closed walk from ``s`` (default: the start) covering all cells."""
    s = P.start if s is None else s
    _check_size(P, limit)
    cells, D = _cells_and_metric(P, s)
    if len(cells) == 1:
        return OptimalTourResult(0, (s,))
    required = ((1 << len(cells)) - 1) & ~1
    dp, best = _held_karp(D, required, 0, 0)
    nodes = [i for i in range(len(cells)) if required >> i & 1]
    order = _reconstruct(D, dp, nodes, 0, 0)
    return OptimalTourResult(best, _expand(P, cells, [0, *order, 0]))


def optimal_completion(
    P: GridPolygon, visited: set[Cell] | frozenset[Cell], current: Cell, limit: int | None = None
) -> int:
    """Fewest further steps from ``current`` to cover the rest and return to the start."""
    _check_size(P, limit)
    cells, D = _cells_and_metric(P, P.start)
    index = {c: i for i, c in enumerate(cells)}
    required = sum(1 << index[c] for c in P.free_cells if c not in visited)
    _, best = _held_karp(D, required, index[current], 0)
    return best


def hamiltonian_cycle_exists(P: GridPolygon, limit: int = HAMILTONIAN_LIMIT) -> bool:
    """Whether a closed tour visits every cell exactly once.

    Brute-force cycle search with a parity cut: grid graphs are bipartite,
    so a Hamiltonian cycle needs an even number of cells, equally split
    between the two colour classes.  Two cells joined by an edge count as
    a cycle of length 2 (out and back), matching ``S_opt = C``; a single
    cell has ``S_opt = 0`` and no cycle.
    """
    C = len(P.free_cells)
    if C > limit:
        raise InstanceTooLarge(f"C={C} exceeds the Hamiltonian search limit {limit}")
    if C % 2:
        return False
    black = sum((x + y) % 2 for x, y in P.free_cells)
    if 2 * black != C:
        return False
    if C == 2:
        return True
    cells = sorted(P.free_cells)
    index = {c: i for i, c in enumerate(cells)}
    adj = [[index[n] for n in _nbrs(c) if n in index] for c in cells]
    if any(len(a) < 2 for a in adj):
        return False
    on_path = [False] * C
    on_path[0] = True

    def extend(v: int, depth: int) -> bool:
        if depth == C:
            return 0 in adj[v]
        for u in adj[v]:
            if not on_path[u]:
                on_path[u] = True
                if extend(u, depth + 1):
                    return True
                on_path[u] = False
        return False

    return extend(0, 1)


def _nbrs(c: Cell):
    x, y = c
    return ((x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y))


def competitive_ratio(P: GridPolygon, strategy: str, limit: int | None = None) -> Fraction:
    """Exact ``S / S_opt`` of a named strategy on ``P``."""
    from .simulator import run_on_polygon
    from .strategies import get_strategy

    S = run_on_polygon(P, get_strategy(strategy)).S
    opt = optimal_tour(P, limit=limit).S_opt
    if opt == 0:
        return Fraction(1)
    return Fraction(S, opt)


__all__ = [
    "DEFAULT_LIMIT",
    "InstanceTooLarge",
    "OptimalTourResult",
    "competitive_ratio",
    "hamiltonian_cycle_exists",
    "optimal_completion",
    "optimal_tour",
    "oracle_limit",
]
