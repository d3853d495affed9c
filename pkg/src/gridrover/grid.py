"""Integer grid polygons: parsing, topology metrics, layers and shortest paths.

Coordinates are ``(x, y)`` tuples with ``y`` growing downward, so north is
``(0, -1)``.  Every cell outside ``free_cells`` is blocked.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]

# Directions form the cyclic group N -> E -> S -> W (clockwise).
N, E, S, W = 0, 1, 2, 3
DIRECTIONS = (N, E, S, W)
DIR_NAMES = "NESW"
DELTA = ((0, -1), (1, 0), (0, 1), (-1, 0))

# 8-neighbourhood in ring order, starting north and going clockwise.
RING = ((0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1))


def cw(d: int) -> int:
    return (d + 1) % 4


def ccw(d: int) -> int:
    return (d + 3) % 4


def reverse(d: int) -> int:
    return (d + 2) % 4


def step(c: Cell, d: int) -> Cell:
    dx, dy = DELTA[d]
    return (c[0] + dx, c[1] + dy)


def direction_between(a: Cell, b: Cell) -> int:
    """Direction of the unit step from ``a`` to the 4-adjacent cell ``b``."""
    delta = (b[0] - a[0], b[1] - a[1])
    try:
        return DELTA.index(delta)
    except ValueError:
        raise ValueError(f"{a} and {b} are not adjacent") from None


def neighbors4(c: Cell) -> Iterator[Cell]:
    x, y = c
    for dx, dy in DELTA:
        yield (x + dx, y + dy)


def neighbors8(c: Cell) -> Iterator[Cell]:
    x, y = c
    for dx, dy in RING:
        yield (x + dx, y + dy)


def adjacent(a: Cell, b: Cell) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def touching(a: Cell, b: Cell) -> bool:
    return a != b and max(abs(a[0] - b[0]), abs(a[1] - b[1])) <= 1


class PolygonError(ValueError):
    """Base class for invalid polygon documents or cell sets."""


class IllegalCharacter(PolygonError):
    pass


class NoStart(PolygonError):
    pass


class MultipleStarts(PolygonError):
    pass


class DisconnectedFreeCells(PolygonError):
    pass


class StartNotAtOuterWall(PolygonError):
    pass


class Unreachable(LookupError):
    """No path between two cells inside the given cell set."""


def components4(cells: Iterable[Cell]) -> list[set[Cell]]:
    """4-connected components, ordered by their smallest ``(y, x)`` cell."""
    remaining = set(cells)
    out = []
    for seed in sorted(remaining, key=lambda c: (c[1], c[0])):
        if seed not in remaining:
            continue
        comp = {seed}
        remaining.discard(seed)
        queue = deque([seed])
        while queue:
            c = queue.popleft()
            for n in neighbors4(c):
                if n in remaining:
                    remaining.discard(n)
                    comp.add(n)
                    queue.append(n)
        out.append(comp)
    return out


def bounding_box(cells: Iterable[Cell]) -> tuple[int, int, int, int]:
    xs, ys = zip(*cells)
    return min(xs), min(ys), max(xs), max(ys)


def exterior_blocked(free: frozenset[Cell] | set[Cell]) -> set[Cell]:
    """Blocked cells of the padded bounding box that 8-connect to its frame.

    The padded box has a one-cell margin, so the frame is entirely blocked
    and stands in for the unbounded outside.
    """
    x0, y0, x1, y1 = bounding_box(free)
    x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    seed = (x0, y0)
    seen = {seed}
    queue = deque([seed])
    while queue:
        c = queue.popleft()
        for n in neighbors8(c):
            if n in seen or n in free:
                continue
            if x0 <= n[0] <= x1 and y0 <= n[1] <= y1:
                seen.add(n)
                queue.append(n)
    return seen


@dataclass(frozen=True)
class TopologyStats:
    C: int
    E: int
    H: int


@dataclass(frozen=True)
class GridPolygon:
    free_cells: frozenset[Cell]
    start: Cell

    def __post_init__(self):
        if not isinstance(self.free_cells, frozenset):
            object.__setattr__(self, "free_cells", frozenset(self.free_cells))
        if not self.free_cells:
            raise NoStart("polygon has no free cells")
        if self.start not in self.free_cells:
            raise NoStart(f"start {self.start} is not a free cell")
        if len(components4(self.free_cells)) != 1:
            raise DisconnectedFreeCells("free cells are not 4-connected")
        outside = exterior_blocked(self.free_cells)
        if not any(n in outside for n in neighbors4(self.start)):
            raise StartNotAtOuterWall(f"start {self.start} does not touch the outer wall")

    def __contains__(self, c: Cell) -> bool:
        return c in self.free_cells

    def __len__(self) -> int:
        return len(self.free_cells)

    def is_free(self, c: Cell) -> bool:
        return c in self.free_cells

    def translated(self, dx: int, dy: int) -> "GridPolygon":
        return GridPolygon(
            frozenset((x + dx, y + dy) for x, y in self.free_cells),
            (self.start[0] + dx, self.start[1] + dy),
        )

    def normalized(self, margin: int = 0) -> "GridPolygon":
        """Translate so the bounding box starts at ``(margin, margin)``."""
        x0, y0, _, _ = bounding_box(self.free_cells)
        return self.translated(margin - x0, margin - y0)

    def transformed(self, k: int, mirror: bool = False) -> "GridPolygon":
        """Apply one of the 8 grid symmetries (``k`` quarter turns, optional mirror)."""

        def f(c: Cell) -> Cell:
            x, y = c
            if mirror:
                x = -x
            for _ in range(k % 4):
                x, y = -y, x
            return (x, y)

        return GridPolygon(frozenset(map(f, self.free_cells)), f(self.start))


def parse_polygon(doc: str) -> GridPolygon:
    """Parse the ASCII format: ``#`` blocked, ``.`` free, ``S`` free start."""
    free = set()
    starts = []
    lines = doc.split("\n")
    while lines and lines[-1].strip("\r") == "":
        lines.pop()
    for y, line in enumerate(lines):
        line = line.rstrip("\r")
        for x, ch in enumerate(line):
            if ch == "#":
                continue
            if ch == ".":
                free.add((x, y))
            elif ch == "S":
                free.add((x, y))
                starts.append((x, y))
            else:
                raise IllegalCharacter(f"illegal character {ch!r} at line {y + 1}, column {x + 1}")
    if not starts:
        raise NoStart("document has no 'S' cell")
    if len(starts) > 1:
        raise MultipleStarts(f"document has {len(starts)} 'S' cells")
    return GridPolygon(frozenset(free), starts[0])


def serialize_polygon(P: GridPolygon, border: bool = False) -> str:
    """Inverse of :func:`parse_polygon`.

    Without ``border`` the document spans rows ``0..max_y`` and columns
    ``0..max_x`` so that parsing it back yields identical coordinates; this
    requires non-negative coordinates.  With ``border`` the polygon is first
    normalized behind a one-cell wall.
    """
    if border:
        P = P.normalized(margin=1)
    x0, y0, x1, y1 = bounding_box(P.free_cells)
    if x0 < 0 or y0 < 0:
        raise ValueError("negative coordinates; use border=True or normalize first")
    if border:
        x1, y1 = x1 + 1, y1 + 1
    rows = []
    for y in range(y1 + 1):
        row = []
        for x in range(x1 + 1):
            c = (x, y)
            row.append("S" if c == P.start else "." if c in P.free_cells else "#")
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def perimeter(cells: Iterable[Cell]) -> int:
    """Number of (free, blocked) 4-adjacent pairs for the given cell set."""
    cells = cells if isinstance(cells, (set, frozenset)) else set(cells)
    return sum(1 for c in cells for n in neighbors4(c) if n not in cells)


def hole_count(cells: Iterable[Cell]) -> int:
    """Blocked 8-components that do not reach the unbounded outside."""
    free = cells if isinstance(cells, (set, frozenset)) else set(cells)
    outside = exterior_blocked(free)
    x0, y0, x1, y1 = bounding_box(free)
    inner = {
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if (x, y) not in free and (x, y) not in outside
    }
    holes = 0
    while inner:
        holes += 1
        queue = deque([inner.pop()])
        while queue:
            c = queue.popleft()
            for n in neighbors8(c):
                if n in inner:
                    inner.discard(n)
                    queue.append(n)
    return holes


def topology_stats(P: GridPolygon) -> TopologyStats:
    return TopologyStats(C=len(P.free_cells), E=perimeter(P.free_cells), H=hole_count(P.free_cells))


def cell_layers(cells: Iterable[Cell]) -> dict[Cell, int]:
    """Layer numbers of an arbitrary cell set by iterated boundary peeling.

    A cell is in layer 1 if one of its 8 neighbours is blocked; peeling layer
    1 and repeating numbers the rest.  Because the predicate is local, this is
    a multi-source BFS over the 8-neighbourhood, and disconnected remainders
    are automatically layered independently.
    """
    cells = cells if isinstance(cells, (set, frozenset)) else set(cells)
    layer = {}
    queue = deque()
    for c in cells:
        if any(n not in cells for n in neighbors8(c)):
            layer[c] = 1
            queue.append(c)
    while queue:
        c = queue.popleft()
        for n in neighbors8(c):
            if n in cells and n not in layer:
                layer[n] = layer[c] + 1
                queue.append(n)
    return layer


@dataclass(frozen=True)
class Layering:
    layer_of: dict[Cell, int]

    def __getitem__(self, c: Cell) -> int:
        return self.layer_of[c]

    @property
    def depth(self) -> int:
        return max(self.layer_of.values())


def compute_layers(P: GridPolygon) -> Layering:
    return Layering(cell_layers(P.free_cells))


def offset_cells(P: GridPolygon, l: int) -> set[Cell]:
    """The ``l``-offset: cells whose layer exceeds ``l``."""
    if l < 1:
        raise ValueError("offset depth must be >= 1")
    layers = cell_layers(P.free_cells)
    return {c for c, k in layers.items() if k > l}


def narrow_passage_cells(P: GridPolygon) -> set[Cell]:
    """Cells whose removal leaves every other cell's layer unchanged."""
    base = cell_layers(P.free_cells)
    out = set()
    for c in P.free_cells:
        rest = P.free_cells - {c}
        after = cell_layers(rest)
        if all(after[d] == base[d] for d in rest):
            out.add(c)
    return out


def has_2x2_square(cells: Iterable[Cell]) -> bool:
    cells = cells if isinstance(cells, (set, frozenset)) else set(cells)
    return any(
        (x + 1, y) in cells and (x, y + 1) in cells and (x + 1, y + 1) in cells for x, y in cells
    )


def bfs_distances(cells: set[Cell] | frozenset[Cell], source: Cell) -> dict[Cell, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        c = queue.popleft()
        for n in neighbors4(c):
            if n in cells and n not in dist:
                dist[n] = dist[c] + 1
                queue.append(n)
    return dist


def shortest_known_path(known: set[Cell] | frozenset[Cell], a: Cell, b: Cell) -> list[Cell]:
    """Minimum-step path from ``a`` to ``b`` inside ``known``.

    BFS expands neighbours in the order N, E, S, W and keeps the first
    parent found, which fixes the tie-break between equal-length paths.
    """
    if a not in known or b not in known:
        raise Unreachable(f"{a} or {b} is not a known cell")
    if a == b:
        return [a]
    parent = {a: None}
    queue = deque([a])
    while queue:
        c = queue.popleft()
        for n in neighbors4(c):
            if n in known and n not in parent:
                parent[n] = c
                if n == b:
                    path = [b]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(n)
    raise Unreachable(f"no path from {a} to {b} inside the known cells")
