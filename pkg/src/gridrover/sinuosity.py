"""Clockwise and counterclockwise sinuosity of a grid polygon.

Boundaries are traced as loops of lattice corners with the free region on
the right-hand side, which walks the outer boundary clockwise and hole
boundaries counterclockwise (screen orientation, ``y`` down).  A left turn
of such a loop is a reflex vertex of the free region.  At every reflex
vertex a square of free cells is grown diagonally away from the blocked
corner cell; only odd widths contribute, rounded down to even.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import DIRECTIONS, Cell, GridPolygon, ccw, cw, exterior_blocked, reverse, step

Point = tuple[int, int]

# Walking direction of the boundary edge on each side of a cell, and the
# lattice points the edge runs between.
_EDGE_ENDS = {
    0: ((0, 0), (1, 0)),  # blocked north: top edge, walked east
    1: ((1, 0), (1, 1)),  # blocked east: right edge, walked south
    2: ((1, 1), (0, 1)),  # blocked south: bottom edge, walked west
    3: ((0, 1), (0, 0)),  # blocked west: left edge, walked north
}


@dataclass(frozen=True)
class BoundaryLoop:
    points: tuple[Point, ...]  # points[i] is where edge i starts
    directions: tuple[int, ...]  # walking direction of edge i
    outer: bool

    def turn_at(self, i: int) -> int:
        """+1 right, 0 straight, -1 left, at the point where edge i starts."""
        a, b = self.directions[i - 1], self.directions[i]
        return 1 if b == cw(a) else -1 if b == ccw(a) else 0

    @property
    def reflex_indices(self) -> list[int]:
        return [i for i in range(len(self.points)) if self.turn_at(i) == -1]


@dataclass(frozen=True)
class ReflexVertexRecord:
    vertex: Point
    traversal_index: int
    square_width: int
    odd_contribution: int
    grow: tuple[int, int]


@dataclass(frozen=True)
class SinuosityReport:
    records: tuple[tuple[ReflexVertexRecord, ...], ...]
    q_start_cw: int
    q_start_ccw: int
    W_cw: int
    W_ccw: int

    def to_dict(self) -> dict:
        return {
            "W_cw": self.W_cw,
            "W_ccw": self.W_ccw,
            "q_start_cw": self.q_start_cw,
            "q_start_ccw": self.q_start_ccw,
            "loops": [
                [
                    {"vertex": list(r.vertex), "index": r.traversal_index, "q": r.square_width, "q_odd": r.odd_contribution}
                    for r in loop
                ]
                for loop in self.records
            ],
        }


def odd_part(q: int) -> int:
    return q - 1 if q % 2 else 0


def _edges(free: frozenset[Cell]) -> dict[Point, list[tuple[int, Point]]]:
    out: dict[Point, list[tuple[int, Point]]] = {}
    for c in free:
        for side in DIRECTIONS:
            if step(c, side) in free:
                continue
            (ax, ay), (bx, by) = _EDGE_ENDS[side]
            a = (c[0] + ax, c[1] + ay)
            b = (c[0] + bx, c[1] + by)
            out.setdefault(a, []).append((cw(side), b))
    return out


def trace_boundaries(P: GridPolygon) -> list[BoundaryLoop]:
    """All boundary loops, outer loop first, holes by their smallest point."""
    out_edges = _edges(P.free_cells)
    outside = exterior_blocked(P.free_cells)
    unused = {(p, d) for p, lst in out_edges.items() for d, _ in lst}
    loops = []
    for p0, d0 in sorted(unused, key=lambda e: (e[0][1], e[0][0], e[1])):
        if (p0, d0) not in unused:
            continue
        points, dirs = [], []
        p, d = p0, d0
        while True:
            unused.discard((p, d))
            points.append(p)
            dirs.append(d)
            nxt = next(q for dd, q in out_edges[p] if dd == d)
            avail = {dd for dd, _ in out_edges[nxt]}
            # prefer the right turn so diagonal free cells stay separate
            d = next(x for x in (cw(d), d, ccw(d)) if x in avail)
            p = nxt
            if (p, d) == (p0, d0):
                break
        # the blocked cell left of edge 0 decides outer vs hole
        side = ccw(dirs[0])
        (ax, ay), _ = _EDGE_ENDS[side]
        free_cell = (points[0][0] - ax, points[0][1] - ay)
        blocked = step(free_cell, side)
        loops.append(BoundaryLoop(tuple(points), tuple(dirs), blocked in outside))
    loops.sort(key=lambda lp: (not lp.outer, min((q[1], q[0]) for q in lp.points)))
    return loops


def _blocked_quadrant(P: GridPolygon, p: Point) -> tuple[int, int]:
    px, py = p
    for gx, gy in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
        cell = (px if gx > 0 else px - 1, py if gy > 0 else py - 1)
        if cell not in P.free_cells:
            return gx, gy
    raise ValueError(f"{p} is not a reflex vertex")


def square_width(P: GridPolygon, corner: Point, grow: tuple[int, int]) -> int:
    """Largest k such that the k x k square at ``corner`` toward ``grow`` is free."""
    gx, gy = grow
    px, py = corner

    def cell(i: int, j: int) -> Cell:
        return (px + i if gx > 0 else px - 1 - i, py + j if gy > 0 else py - 1 - j)

    k = 0
    while True:
        strip = [cell(k, j) for j in range(k + 1)] + [cell(i, k) for i in range(k)]
        if not all(c in P.free_cells for c in strip):
            return k
        k += 1


def grow_square(P: GridPolygon, p: Point) -> int:
    """Width of the free square grown from reflex vertex ``p`` along its bisector."""
    bx, by = _blocked_quadrant(P, p)
    return square_width(P, p, (-bx, -by))


def start_direction(P: GridPolygon) -> int:
    for d in DIRECTIONS:
        if step(P.start, reverse(d)) not in P.free_cells:
            return d
    raise ValueError("start cell has no wall")


def _start_squares(P: GridPolygon) -> tuple[int, int]:
    """Widths of the start squares, clockwise one first.

    "Clockwise" is the direction of the boundary trace: with its back to the
    wall the robot has the clockwise continuation of the wall on its left.
    """
    d = start_direction(P)
    sx, sy = P.start

    def square(side: int) -> int:
        fx, fy = step((0, 0), d)
        lx, ly = step((0, 0), side)
        gx, gy = fx + lx, fy + ly
        corner = (sx + (1 if gx < 0 else 0), sy + (1 if gy < 0 else 0))
        return square_width(P, corner, (gx, gy))

    return square(ccw(d)), square(cw(d))


def _loop_origin(P: GridPolygon, loop: BoundaryLoop) -> int:
    sx, sy = P.start
    if loop.outer:
        wall = reverse(start_direction(P))
        (ax, ay), _ = _EDGE_ENDS[wall]
        origin = (sx + ax, sy + ay)
        for i, (p, d) in enumerate(zip(loop.points, loop.directions)):
            if p == origin and d == cw(wall):
                return i
    cx, cy = 2 * sx + 1, 2 * sy + 1
    return min(
        range(len(loop.points)),
        key=lambda i: ((2 * loop.points[i][0] - cx) ** 2 + (2 * loop.points[i][1] - cy) ** 2, i),
    )


def reflex_records(P: GridPolygon, loop: BoundaryLoop) -> tuple[ReflexVertexRecord, ...]:
    n = len(loop.points)
    o = _loop_origin(P, loop)
    recs = []
    for k in range(n):
        i = (o + k) % n
        if loop.turn_at(i) != -1:
            continue
        p = loop.points[i]
        bx, by = _blocked_quadrant(P, p)
        q = square_width(P, p, (-bx, -by))
        recs.append(ReflexVertexRecord(p, len(recs) + 1, q, odd_part(q), (-bx, -by)))
    return tuple(recs)


def compute_sinuosity(P: GridPolygon) -> SinuosityReport:
    records = tuple(reflex_records(P, loop) for loop in trace_boundaries(P))
    q_cw, q_ccw = _start_squares(P)
    s_cw, s_ccw = odd_part(q_cw), odd_part(q_ccw)
    odd = sum(r.odd_contribution for loop in records for r in loop if r.traversal_index % 2 == 1)
    even = sum(r.odd_contribution for loop in records for r in loop if r.traversal_index % 2 == 0)
    return SinuosityReport(records, s_cw, s_ccw, s_ccw + odd, s_cw + even)
