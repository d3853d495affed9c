"""SmartDFS: left-hand DFS with shortest-path returns and split-cell handling.

Two changes to plain DFS.  Before each step out of a base cell the robot
walks the shortest path over visited cells back to that base, instead of
retracing its steps.  And when the cell just entered splits the unvisited
cells into several components, the component that still contains the
unvisited rest of the current layer (type III) is left for last.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..grid import RING, Cell, ccw, cw, direction_between, neighbors8, step
from ..simulator import KnownMap, Robot
from .common import initial_direction

TYPE_I, TYPE_II, TYPE_III = "I", "II", "III"


@dataclass(frozen=True)
class SplitComponent:
    ident: int
    kind: str
    cells: tuple[Cell, ...]
    directions: tuple[int, ...]


@dataclass(frozen=True)
class SplitEvent:
    split_cell: Cell
    layer: int
    components: tuple[SplitComponent, ...]

    @property
    def type_iii(self) -> tuple[SplitComponent, ...]:
        return tuple(c for c in self.components if c.kind == TYPE_III)


def _layers(known: KnownMap) -> dict[Cell, int]:
    return known.annotations.setdefault("layer", {})


def online_layer(known: KnownMap, c: Cell) -> int:
    """Layer of a freshly entered cell from what the robot has seen.

    Layer 1 if a known blocked cell touches ``c``; otherwise one more than
    the smallest layer among visited touching cells.
    """
    if any(n in known.sensed_blocked for n in neighbors8(c)):
        return 1
    layers = _layers(known)
    seen = [layers[n] for n in neighbors8(c) if n in layers]
    return 1 + min(seen) if seen else 1


def _ring(pos: Cell) -> list[Cell]:
    return [(pos[0] + dx, pos[1] + dy) for dx, dy in RING]


def _settled(known: KnownMap, c: Cell) -> bool:
    """Visited or known to be a wall: the cells that bound unvisited components."""
    return c in known.visited or c in known.sensed_blocked


def _settled_groups(known: KnownMap, pos: Cell) -> int:
    ring = [c for c in _ring(pos) if _settled(known, c)]
    groups = 0
    seen = set()
    for c in ring:
        if c in seen:
            continue
        groups += 1
        todo = [c]
        seen.add(c)
        while todo:
            a = todo.pop()
            for b in ring:
                if b not in seen and max(abs(a[0] - b[0]), abs(a[1] - b[1])) == 1:
                    seen.add(b)
                    todo.append(b)
    return groups


def _open_runs(known: KnownMap, pos: Cell) -> list[list[int]]:
    """Maximal cyclic runs of unsettled ring positions (indices into RING)."""
    ring = _ring(pos)
    free = [not _settled(known, c) for c in ring]
    if all(free):
        return [list(range(8))]
    first = free.index(False)
    runs, cur = [], []
    for k in range(8):
        i = (first + k) % 8
        if free[i]:
            cur.append(i)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _enterable(known: KnownMap, pos: Cell, run: list[int]) -> bool:
    ring = _ring(pos)
    return any(i % 2 == 0 and known.unexplored(ring[i]) for i in run)


def detect_split(known: KnownMap, pos: Cell) -> bool:
    """Whether entering ``pos`` split the unvisited cells.

    In a simple polygon the visited cells together with the walls form one
    connected set, so if the settled cells around ``pos`` fall into more
    than one group, the open cells between them cannot meet again.  Walls
    count as settled once sensed; a diagonal cell that has not been sensed
    is treated as open, which can hide a split but never invents one.
    """
    if _settled_groups(known, pos) < 2:
        return False
    return sum(_enterable(known, pos, run) for run in _open_runs(known, pos)) >= 2


def classify_components(known: KnownMap, split: Cell, layer: int) -> SplitEvent:
    """Type the open groups around a split cell by their bounding layers.

    Each maximal run of open ring cells is bounded by the two settled ring
    cells at its ends, walls counting as layer 0.  Both of layer ``layer``:
    type I; neither: type II; one of each: type III.  Runs that cannot be
    entered from the split cell are left out.
    """
    layers = _layers(known)
    ring = _ring(split)

    def layer_of(c: Cell) -> int:
        return 0 if c in known.sensed_blocked else layers[c]

    comps = []
    for run in _open_runs(known, split):
        if not _enterable(known, split, run):
            continue
        ends = (ring[(run[0] - 1) % 8], ring[(run[-1] + 1) % 8])
        bound = [layer_of(c) == layer for c in ends]
        if all(bound):
            kind = TYPE_I
        elif not any(bound):
            kind = TYPE_II
        else:
            kind = TYPE_III
        cells = tuple(ring[i] for i in run)
        dirs = tuple(direction_between(split, ring[i]) for i in run if i % 2 == 0)
        comps.append(SplitComponent(len(comps), kind, cells, dirs))
    return SplitEvent(split, layer, tuple(comps))


def _explore_order(known: KnownMap, base: Cell, d: int) -> tuple[list[int], SplitEvent | None]:
    lhr = [ccw(d), d, cw(d)]
    if not detect_split(known, base):
        return lhr, None
    event = classify_components(known, base, _layers(known)[base])
    last = {x for comp in event.type_iii for x in comp.directions}
    if last:
        return [x for x in lhr if x not in last] + [x for x in lhr if x in last], event
    # No type III: follow the left-hand rule but omit the first possible step.
    avail = [x for x in lhr if known.unexplored(step(base, x))]
    rest = [x for x in lhr if x not in avail]
    return avail[1:] + avail[:1] + rest, event


def explore_smartdfs(robot: Robot) -> None:
    known = robot.known
    layers = _layers(known)
    events = known.annotations.setdefault("splits", [])
    start = robot.position
    d0 = initial_direction(robot)

    def enter(cell: Cell, d: int):
        layers[cell] = online_layer(known, cell)
        order, event = _explore_order(known, cell, d)
        if event is not None:
            events.append(event)
        return [cell, order, 0]

    stack = [enter(start, d0)]
    while stack:
        frame = stack[-1]
        base, order, i = frame
        while i < len(order) and not known.unexplored(step(base, order[i])):
            i += 1
        if i == len(order):
            stack.pop()
            continue
        frame[2] = i + 1
        robot.walk_to(base)
        robot.move(order[i])
        stack.append(enter(robot.position, order[i]))
    robot.walk_to(start)


def strategy_smartdfs():
    return explore_smartdfs
