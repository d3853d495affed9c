"""Adaptive adversaries that build the polygon while the robot explores it.

A :class:`LazyEnvironment` answers each sensor query from a script and
commits the answer for good.  Cells nobody asked about are blocked in the
final polygon.  After the run every answer is replayed against the
finalized polygon, so an inconsistent script fails loudly instead of
producing a misleading ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..grid import E, N, S, W, Cell, GridPolygon, direction_between, neighbors4
from ..simulator import ExplorationTrace, SimulationError, Strategy, run_strategy


class InconsistentAdversary(SimulationError):
    """The finalized polygon contradicts an answer given during the run."""


class LazyEnvironment:
    """An environment whose cells are fixed on first query.

    ``decide(cell)`` supplies the status of a cell queried for the first
    time; ``on_step(position, steps)`` lets the script react to the robot's
    progress (and commit cells ahead of any query).
    """

    def __init__(
        self,
        start: Cell,
        decide: Callable[[Cell], bool],
        on_step: Callable[[Cell, int], None] | None = None,
        budget: int = 100_000,
    ):
        self.start = start
        self.status: dict[Cell, bool] = {start: True}
        self.log: list[tuple[Cell, bool]] = [(start, True)]
        self._decide = decide
        self._on_step = on_step
        self._budget = budget

    def commit(self, c: Cell, free: bool) -> None:
        if c in self.status:
            if self.status[c] != free:
                raise InconsistentAdversary(f"cell {c} already committed as {self.status[c]}")
            return
        self.status[c] = free
        self.log.append((c, free))

    def is_free(self, c: Cell) -> bool:
        if c not in self.status:
            self.commit(c, bool(self._decide(c)))
        return self.status[c]

    def step_budget(self) -> int:
        return self._budget

    def observe(self, position: Cell, steps: int) -> None:
        if self._on_step is not None:
            self._on_step(position, steps)

    def final_polygon(self) -> GridPolygon:
        return GridPolygon(frozenset(c for c, free in self.status.items() if free), self.start)

    def replay(self, P: GridPolygon) -> None:
        for c, free in self.log:
            if (c in P.free_cells) != free:
                raise InconsistentAdversary(f"answer for {c} disagrees with the final polygon")


@dataclass(frozen=True)
class AdversaryResult:
    polygon: GridPolygon
    trace: ExplorationTrace
    S_opt: int
    case: str

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.trace.S, self.S_opt)


def _resolve(strategy: str | Strategy) -> Strategy:
    if isinstance(strategy, str):
        from ..strategies import get_strategy

        return get_strategy(strategy)
    return strategy


def _edge_count(cells: frozenset[Cell]) -> int:
    return sum(1 for x, y in cells for n in ((x + 1, y), (x, y + 1)) if n in cells)


def sparse_tour_length(P: GridPolygon) -> int:
    """Exact optimum for polygons whose grid graph has at most one cycle.

    Every bridge is crossed twice by a closed covering walk and a cycle of
    length ``L`` costs at least ``L``; both are achieved by walking the
    cycle once and each pendant tree out and back.  Trees give ``2(C-1)``,
    unicyclic graphs give ``2C - L``.
    """
    cells = set(P.free_cells)
    n = len(cells)
    rank = _edge_count(P.free_cells) - n + 1
    if rank == 0:
        return 2 * (n - 1)
    if rank != 1:
        raise ValueError("grid graph has more than one independent cycle")
    # peel leaves until only the cycle is left
    degree = {c: sum(m in cells for m in neighbors4(c)) for c in cells}
    leaves = [c for c, d in degree.items() if d == 1]
    while leaves:
        c = leaves.pop()
        cells.discard(c)
        for m in neighbors4(c):
            if m in cells:
                degree[m] -= 1
                if degree[m] == 1:
                    leaves.append(m)
    return 2 * n - len(cells)


# --- polygons with holes -------------------------------------------------


class _HolesScript:
    """Width-1 corridor along ``y = 0`` with the two closing cases.

    Case 1: the robot stands on the start again at a step in ``[Q, 2Q]``;
    both corridor ends are closed one cell beyond the explored part.
    Case 2: otherwise, at step ``2Q`` a bifurcation ``b`` is added right
    behind the farther explored end.  Two paths leave ``b`` and run back
    along ``y = -2`` and ``y = +2`` to the other end of the corridor.  The
    first path whose connector to that end is queried becomes the
    connection; the other one turns into a dead end one cell behind its
    last visited cell.
    """

    def __init__(self, Q: int):
        self.Q = Q
        self.case: str | None = None
        self.xmin = self.xmax = 0
        self.visited: set[Cell] = {(0, 0)}
        self.env: LazyEnvironment | None = None
        # case 2 geometry
        self.sign = 1
        self.bx = self.xc = 0
        self.connected: int | None = None
        self.dead_len: int | None = None

    def _path(self, side: int) -> list[Cell]:
        """Cells of the path on ``side`` (+1 below, -1 above), from ``b`` to its connector."""
        cells = [(self.bx, side)]
        x = self.bx
        while True:
            cells.append((x, 2 * side))
            if x == self.xc:
                break
            x -= self.sign
        cells.append((self.xc, side))
        return cells

    def decide(self, c: Cell) -> bool:
        x, y = c
        if self.case is None:
            return y == 0
        if self.case == "closed":
            return y == 0 and self.xmin - 1 <= x <= self.xmax + 1
        lo, hi = sorted((self.xc, self.bx))
        if y == 0:
            return lo <= x <= hi
        side = 1 if y > 0 else -1
        path = self._path(side)
        if c not in path:
            return False
        i = path.index(c)
        if i == len(path) - 1:
            # a connector: the first one asked for becomes the connection
            if self.connected is None:
                self._connect(side)
            return self.connected == side
        if self.connected is not None and side != self.connected:
            return i < self.dead_len
        return True

    def _connect(self, side: int) -> None:
        self.connected = side
        other = self._path(-side)
        seen = [i for i, c in enumerate(other) if c in self.visited]
        # keep one unvisited cell behind the last visited one
        self.dead_len = (max(seen) + 1 if seen else 0) + 1

    def on_step(self, position: Cell, steps: int) -> None:
        self.visited.add(position)
        if position[1] == 0:
            self.xmin = min(self.xmin, position[0])
            self.xmax = max(self.xmax, position[0])
        if self.case is not None:
            return
        if position == (0, 0) and self.Q <= steps <= 2 * self.Q:
            self.case = "closed"
            self.env.commit((self.xmax + 2, 0), False)
            self.env.commit((self.xmin - 2, 0), False)
        elif steps >= 2 * self.Q:
            self.case = "bifurcation"
            right = self.xmax >= -self.xmin if self.xmax != -self.xmin else position[0] >= 0
            self.sign = 1 if right else -1
            self.bx = self.xmax + 1 if right else self.xmin - 1
            self.xc = self.xmin - 1 if right else self.xmax + 1
            self.env.commit((self.bx + self.sign, 0), False)
            self.env.commit((self.xc - self.sign, 0), False)


def adversary_holes(strategy: str | Strategy, Q: int) -> AdversaryResult:
    """Drive ``strategy`` through the width-1 corridor construction.

    The result has ``S_opt`` computed exactly from the structure of the
    final polygon (a path, or a cycle with one pendant dead end).
    """
    if Q < 10:
        raise ValueError("Q must be at least 10")
    script = _HolesScript(Q)
    env = LazyEnvironment((0, 0), script.decide, script.on_step, budget=100 * Q + 1000)
    script.env = env
    trace = run_strategy(env, _resolve(strategy), (0, 0))
    P = env.final_polygon()
    env.replay(P)
    return AdversaryResult(P, trace, sparse_tour_length(P), script.case or "open")


# --- simple polygons -----------------------------------------------------

# Gadget variants: (width, height) of a block in the strip.
GADGETS = {"iv": (3, 2), "v": (5, 2), "vi": (5, 2), "vii": (8, 3)}


def gadget_variant(moves: list[int]) -> str | None:
    """The variant forced by the first moves made inside a block, if any."""
    if len(moves) >= 1 and moves[0] != E:
        return "iv"
    if len(moves) >= 2 and moves[1] != E:
        return "iv"
    if len(moves) >= 3:
        if moves[2] == E:
            return "vii"
        return "v" if moves[2] == S else "vi"
    return None


def gadget_polygon(variant: str) -> GridPolygon:
    """One block on its own, start in the top-left corner."""
    w, h = GADGETS[variant]
    return GridPolygon(frozenset((x, y) for x in range(w) for y in range(h)), (0, 0))


class _StripScript:
    """A strip of blocks along the top wall, each chosen by the robot's moves.

    Rows 0 and 1 are free in every variant, so they can be answered before
    a block is decided; row 2 exists only in the 3-high variant.  A block
    is decided as soon as the moves made since the robot first entered it
    determine the variant.  A row-2 query inside an undecided block (the
    robot entered it away from the corner) closes the block as (iv).
    """

    def __init__(self, blocks: int):
        self.k = blocks
        self.starts = [0]  # x of the first column of each block
        self.variants: list[str] = []
        self.moves: list[int] = []
        self.entered = True
        self.prev: Cell = (0, 0)

    @property
    def open_block(self) -> int:
        return len(self.variants)

    def _settle(self, variant: str) -> None:
        self.variants.append(variant)
        self.starts.append(self.starts[-1] + GADGETS[variant][0])
        self.moves = []
        self.entered = False

    def _block_of(self, x: int) -> int | None:
        for i, v in enumerate(self.variants):
            if self.starts[i] <= x < self.starts[i + 1]:
                return i
        return None

    def decide(self, c: Cell) -> bool:
        x, y = c
        if x < 0 or y < 0 or y > 2:
            return False
        i = self._block_of(x)
        if i is not None:
            return y < GADGETS[self.variants[i]][1]
        if self.open_block >= self.k:
            return False
        if y < 2:
            # free in every variant of every block still to come, except past
            # the end of the last block; a last block seen three columns in
            # was entered along the wall and is at least five wide
            return self.open_block < self.k - 1 or x - self.starts[-1] < 5
        self._settle("iv")
        return self.decide(c)

    def on_step(self, position: Cell, steps: int) -> None:
        d = direction_between(self.prev, position)
        self.prev = position
        if self.open_block >= self.k:
            return
        if not self.entered:
            # moves count from the cell where the robot first enters the block
            self.entered = position[0] >= self.starts[-1]
            return
        self.moves.append(d)
        v = gadget_variant(self.moves)
        if v is not None:
            self._settle(v)


def strip_hamiltonian_cycle(variants: list[str]) -> list[Cell]:
    """A closed tour through every cell of a strip of blocks.

    Out along row 0, back along row 1 where the strip is two high and in a
    zigzag through rows 1 and 2 where it is three high (those runs have
    even width).
    """
    heights = []
    for v in variants:
        w, h = GADGETS[v]
        heights.extend([h] * w)
    width = len(heights)
    tour = [(x, 0) for x in range(width)]
    x = width - 1
    while x >= 0:
        if heights[x] == 3:
            tour += [(x, 1), (x, 2), (x - 1, 2), (x - 1, 1)]
            x -= 2
        else:
            tour.append((x, 1))
            x -= 1
    tour.append((0, 0))
    return tour


def adversary_simple(strategy: str | Strategy, blocks: int) -> AdversaryResult:
    """Chain ``blocks`` adaptive gadgets to the east and run ``strategy``.

    ``S_opt`` equals ``C`` and is certified by an explicit Hamiltonian
    cycle of the final strip.
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    script = _StripScript(blocks)
    env = LazyEnvironment((0, 0), script.decide, script.on_step, budget=1000 * blocks + 1000)
    trace = run_strategy(env, _resolve(strategy), (0, 0))
    # the robot may finish without ever pinning the last blocks down
    while script.open_block < blocks and script.starts[-1] <= max(x for x, _ in env.status):
        script._settle("iv")
    P = env.final_polygon()
    env.replay(P)
    tour = strip_hamiltonian_cycle(script.variants)
    if set(tour) == set(P.free_cells) and _is_walk(tour) and len(tour) - 1 == len(P.free_cells):
        S_opt = len(P.free_cells)
    else:
        from ..oracle import optimal_tour

        S_opt = optimal_tour(P).S_opt
    return AdversaryResult(P, trace, S_opt, "+".join(script.variants))


def _is_walk(path: list[Cell]) -> bool:
    return all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(path, path[1:]))


__all__ = [
    "GADGETS",
    "AdversaryResult",
    "InconsistentAdversary",
    "LazyEnvironment",
    "adversary_holes",
    "adversary_simple",
    "gadget_polygon",
    "gadget_variant",
    "sparse_tour_length",
    "strip_hamiltonian_cycle",
]
