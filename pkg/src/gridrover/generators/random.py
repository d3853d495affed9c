"""Seeded random polygons.

Simple polygons grow by accretion from a single cell, rejecting any cell
whose addition would enclose a blocked region.  Holey polygons are grown
the same way and then have interior cells carved out.  Fat polygons grow
from a 3x3 block by whole runs of at least three cells.
"""

from __future__ import annotations

import math
import random as _random

from ..grid import (
    DELTA,
    RING,
    Cell,
    GridPolygon,
    components4,
    exterior_blocked,
    hole_count,
    narrow_passage_cells,
    neighbors4,
    neighbors8,
    offset_cells,
    perimeter,
)


class TargetInfeasible(ValueError):
    """The requested size/hole combination could not be generated."""


def _ring(c: Cell) -> list[Cell]:
    return [(c[0] + dx, c[1] + dy) for dx, dy in RING]


def _groups8(cells: list[Cell]) -> list[set[Cell]]:
    groups: list[set[Cell]] = []
    for c in cells:
        touching = [g for g in groups if any(max(abs(c[0] - d[0]), abs(c[1] - d[1])) == 1 for d in g)]
        merged = {c}.union(*touching)
        groups = [g for g in groups if g not in touching] + [merged]
    return groups


def _keeps_simple(free: set[Cell], c: Cell) -> bool:
    """Whether adding ``c`` leaves a hole-free set hole-free."""
    blocked = [r for r in _ring(c) if r not in free]
    if len(_groups8(blocked)) <= 1:
        return True
    return hole_count(free | {c}) == 0


def _start_cell(free: set[Cell]) -> Cell:
    return min(free, key=lambda c: (c[1], c[0]))


def _accrete(rng: _random.Random, n: int, compactness: float) -> set[Cell]:
    free = {(0, 0)}
    frontier = {n for n in neighbors4((0, 0))}
    while len(free) < n:
        cand = sorted(frontier)
        weights = [math.exp(compactness * sum(m in free for m in neighbors4(c))) for c in cand]
        while True:
            c = rng.choices(cand, weights)[0]
            if _keeps_simple(free, c):
                break
            i = cand.index(c)
            del cand[i], weights[i]
            frontier.discard(c)
            if not cand:
                raise TargetInfeasible("accretion ran out of candidate cells")
        free.add(c)
        frontier.discard(c)
        frontier.update(m for m in neighbors4(c) if m not in free)
    return free


def gen_random_simple(seed: int, C: int, compactness: float | None = None) -> GridPolygon:
    """A reproducible random simple polygon with exactly ``C`` cells.

    ``compactness`` weights candidate cells by ``exp(compactness * k)``
    where ``k`` is the number of free neighbours; when omitted it is drawn
    from the seed, so a batch of seeds mixes thin and blocky shapes.
    """
    if C < 1:
        raise TargetInfeasible("C must be positive")
    rng = _random.Random(seed)
    if compactness is None:
        compactness = rng.uniform(-1.0, 2.5)
    free = _accrete(rng, C, compactness)
    return GridPolygon(frozenset(free), _start_cell(free)).normalized()


def _carvable(free: set[Cell], c: Cell, start: Cell) -> bool:
    return c != start and all(r in free for r in _ring(c))


def _grow_hole(free: set[Cell], hole: set[Cell], c: Cell, start: Cell) -> bool:
    """Whether ``c`` can join ``hole`` without touching another blocked region."""
    if c == start or c not in free:
        return False
    blocked = [r for r in _ring(c) if r not in free]
    if not blocked or any(r not in hole for r in blocked):
        return False
    if len(_groups8(blocked)) != 1:
        return False
    # carving must keep the free ring 4-connected around c
    ring_free = [r for r in _ring(c) if r in free]
    return len(components4(ring_free)) == 1


def gen_random_holey(
    seed: int, C: int, H: int, max_hole: int = 3, compactness: float | None = None, attempts: int = 20
) -> GridPolygon:
    """A reproducible random polygon with ``C`` free cells and ``H`` holes.

    Each hole starts as one carved cell whose eight surrounding cells are
    free and may grow to ``max_hole`` cells.
    """
    if C < 1 or H < 0:
        raise TargetInfeasible("C must be positive and H non-negative")
    rng = _random.Random(seed)
    for _ in range(attempts):
        sizes = [rng.randint(1, max(1, max_hole)) for _ in range(H)]
        comp = compactness if compactness is not None else rng.uniform(1.0, 3.0)
        try:
            free = _accrete(rng, C + sum(sizes), comp)
        except TargetInfeasible:
            continue
        start = _start_cell(free)
        ok = True
        for size in sizes:
            cand = sorted(c for c in free if _carvable(free, c, start))
            if not cand:
                ok = False
                break
            seed_cell = rng.choice(cand)
            free.discard(seed_cell)
            hole = {seed_cell}
            while len(hole) < size:
                grow = sorted({n for h in hole for n in neighbors4(h)} & free)
                grow = [g for g in grow if _grow_hole(free, hole, g, start)]
                if not grow:
                    break
                g = rng.choice(grow)
                free.discard(g)
                hole.add(g)
        # holes that stopped growing early leave surplus cells; trim the outer wall
        while ok and len(free) > C:
            outside = exterior_blocked(free)
            tail = sorted(c for c in free if c != start and _removable_from_outside(free, c, outside))
            if not tail:
                ok = False
                break
            free.discard(rng.choice(tail))
        if not ok or len(free) != C:
            continue
        if hole_count(free) != H or len(components4(free)) != 1:
            continue
        return GridPolygon(frozenset(free), start).normalized()
    raise TargetInfeasible(f"could not generate C={C} with H={H}")


def _removable_from_outside(free: set[Cell], c: Cell, outside: set[Cell]) -> bool:
    """A cell on the outer wall whose removal keeps the topology."""
    if not any(n in outside for n in neighbors4(c)):
        return False
    ring = _ring(c)
    ring_free = [r for r in ring if r in free]
    if len(components4(ring_free)) != 1:
        return False
    blocked = [r for r in ring if r not in free]
    return all(r in outside for r in blocked) and len(_groups8(blocked)) == 1


def _side_runs(free: set[Cell], d: int) -> list[list[Cell]]:
    """Maximal straight runs of cells whose ``d`` neighbour is outside."""
    dx, dy = DELTA[d]
    exposed = {c for c in free if (c[0] + dx, c[1] + dy) not in free}
    along = (1, 0) if dx == 0 else (0, 1)
    runs = []
    for c in sorted(exposed):
        prev = (c[0] - along[0], c[1] - along[1])
        if prev in exposed:
            continue
        run = [c]
        while (run[-1][0] + along[0], run[-1][1] + along[1]) in exposed:
            run.append((run[-1][0] + along[0], run[-1][1] + along[1]))
        runs.append(run)
    return runs


def is_fat(cells: set[Cell] | frozenset[Cell]) -> bool:
    """No holes, no narrow passages, and a connected 1-offset."""
    if hole_count(cells) != 0:
        return False
    P = GridPolygon(frozenset(cells), _start_cell(set(cells)))
    if narrow_passage_cells(P):
        return False
    inner = offset_cells(P, 1)
    return len(components4(inner)) == 1


def gen_fat(seed: int, rounds: int, attempts: int = 50) -> GridPolygon:
    """Grow a 3x3 block by ``rounds`` runs of at least three cells each.

    A round appends a straight run of new cells alongside an exposed side
    of the current polygon.  A run is accepted only if it adds at least
    three cells and at most two edges, and the result stays free of holes
    and narrow passages with a connected 1-offset.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    rng = _random.Random(seed)
    free = {(x, y) for x in range(3) for y in range(3)}
    for _ in range(rounds):
        E = perimeter(free)
        for _ in range(attempts):
            d = rng.randrange(4)
            runs = [r for r in _side_runs(free, d) if len(r) >= 3]
            if not runs:
                continue
            run = rng.choice(runs)
            k = rng.randint(3, len(run))
            i = rng.randint(0, len(run) - k)
            dx, dy = DELTA[d]
            new = {(c[0] + dx, c[1] + dy) for c in run[i : i + k]}
            grown = free | new
            if perimeter(grown) - E > 2 or not is_fat(grown):
                continue
            free = grown
            break
        else:
            raise TargetInfeasible("no admissible accretion found")
    return GridPolygon(frozenset(free), _start_cell(free)).normalized()


__all__ = ["TargetInfeasible", "gen_fat", "gen_random_holey", "gen_random_simple", "is_fat"]
