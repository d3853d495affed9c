"""Online exploration model: a robot that only senses the 4 neighbours of
the cells it has entered.

A strategy is any callable ``strategy(robot)``.  It may read ``robot.known``
and move with ``robot.move``; the environment itself is never exposed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Protocol

from .grid import (
    DIRECTIONS,
    Cell,
    GridPolygon,
    ccw,
    direction_between,
    neighbors4,
    shortest_known_path,
    step,
    topology_stats,
)


class SimulationError(RuntimeError):
    """A strategy broke the rules of the online model."""


class IllegalMove(SimulationError):
    pass


class IncompleteCoverage(SimulationError):
    pass


class NotClosedTour(SimulationError):
    pass


class StepBudgetExceeded(SimulationError):
    pass


class UnknownCell(SimulationError):
    """A strategy asked about a cell it has never sensed."""


class Environment(Protocol):
    def is_free(self, c: Cell) -> bool: ...

    def step_budget(self) -> int: ...

    def observe(self, position: Cell, steps: int) -> None: ...

    def final_polygon(self) -> GridPolygon: ...


class PolygonEnvironment:
    """A fully determined world backed by a :class:`GridPolygon`."""

    def __init__(self, polygon: GridPolygon):
        self.polygon = polygon

    def is_free(self, c: Cell) -> bool:
        return c in self.polygon.free_cells

    def step_budget(self) -> int:
        return 10 * max(len(self.polygon.free_cells), 1)

    def observe(self, position: Cell, steps: int) -> None:
        pass

    def final_polygon(self) -> GridPolygon:
        return self.polygon


@dataclass(frozen=True)
class SensorView:
    """Free/blocked status of the four neighbours, indexed N, E, S, W."""

    free: tuple[bool, bool, bool, bool]

    def __getitem__(self, d: int) -> bool:
        return self.free[d]


@dataclass
class KnownMap:
    visited: set[Cell] = field(default_factory=set)
    sensed_free: set[Cell] = field(default_factory=set)
    sensed_blocked: set[Cell] = field(default_factory=set)
    annotations: dict = field(default_factory=dict)

    def is_known(self, c: Cell) -> bool:
        return c in self.sensed_free or c in self.sensed_blocked

    def is_free(self, c: Cell) -> bool:
        if c in self.sensed_free:
            return True
        if c in self.sensed_blocked:
            return False
        raise UnknownCell(f"cell {c} has not been sensed")

    def is_blocked(self, c: Cell) -> bool:
        """True only for cells known to be blocked."""
        return c in self.sensed_blocked

    def unexplored(self, c: Cell) -> bool:
        """Known free but not yet visited."""
        return c in self.sensed_free and c not in self.visited


@dataclass(frozen=True)
class ExplorationTrace:
    positions: tuple[Cell, ...]
    modes: tuple[str, ...] | None = None

    @property
    def S(self) -> int:
        return len(self.positions) - 1

    @property
    def directions(self) -> list[int]:
        p = self.positions
        return [direction_between(p[i], p[i + 1]) for i in range(len(p) - 1)]

    @property
    def L(self) -> int:
        """Steps whose direction is the counterclockwise turn of the previous one."""
        dirs = self.directions
        return sum(1 for a, b in zip(dirs, dirs[1:]) if b == ccw(a))

    def to_text(self) -> str:
        return "".join(f"{x},{y}\n" for x, y in self.positions)

    @classmethod
    def from_text(cls, text: str) -> "ExplorationTrace":
        positions = []
        for line in text.splitlines():
            line = line.strip()
            if line:
                x, y = line.split(",")
                positions.append((int(x), int(y)))
        return cls(tuple(positions))


class Robot:
    """The strategy's handle on the world.

    Entering a cell senses its four neighbours automatically.
    """

    def __init__(self, env: Environment, start: Cell):
        self._env = env
        self._budget = env.step_budget()
        self.known = KnownMap()
        self.position = start
        self.heading: int | None = None
        self._positions = [start]
        self._modes: list[str] = []
        self._enter(start)

    def _enter(self, c: Cell) -> None:
        self.known.visited.add(c)
        self.known.sensed_free.add(c)
        for n in neighbors4(c):
            if n in self.known.sensed_free or n in self.known.sensed_blocked:
                continue
            if self._env.is_free(n):
                self.known.sensed_free.add(n)
            else:
                self.known.sensed_blocked.add(n)

    @property
    def steps(self) -> int:
        return len(self._positions) - 1

    def sense(self) -> SensorView:
        return SensorView(tuple(step(self.position, d) in self.known.sensed_free for d in DIRECTIONS))

    def move(self, d: int, mode: str = "") -> None:
        target = step(self.position, d)
        if target not in self.known.sensed_free:
            raise IllegalMove(f"move {d} from {self.position} into blocked cell {target}")
        if self.steps >= self._budget:
            raise StepBudgetExceeded(f"step budget {self._budget} exhausted")
        self.position = target
        self.heading = d
        self._positions.append(target)
        self._modes.append(mode)
        # a lazy world may commit cells in reaction to the move before it is sensed
        self._env.observe(target, self.steps)
        self._enter(target)

    def walk(self, path: list[Cell], mode: str = "") -> None:
        """Follow a path whose first cell is the current position."""
        if path and path[0] != self.position:
            raise IllegalMove(f"path starts at {path[0]}, robot is at {self.position}")
        for a, b in zip(path, path[1:]):
            self.move(direction_between(a, b), mode)

    def walk_to(self, target: Cell, through: set[Cell] | None = None, mode: str = "") -> None:
        """Shortest walk to ``target`` over visited cells (plus ``through``)."""
        cells = self.known.visited if through is None else self.known.visited | through
        self.walk(shortest_known_path(cells, self.position, target), mode)

    def trace(self) -> ExplorationTrace:
        modes = tuple(self._modes) if any(self._modes) else None
        return ExplorationTrace(tuple(self._positions), modes)


Strategy = Callable[[Robot], None]


def run_strategy(env: Environment, strategy: Strategy, start: Cell) -> ExplorationTrace:
    robot = Robot(env, start)
    strategy(robot)
    trace = robot.trace()
    if trace.positions[-1] != start:
        raise NotClosedTour(f"tour ends at {trace.positions[-1]}, not at start {start}")
    polygon = env.final_polygon()
    missing = polygon.free_cells - set(trace.positions)
    if missing:
        raise IncompleteCoverage(f"{len(missing)} free cells never visited, e.g. {min(missing)}")
    return trace


def run_on_polygon(P: GridPolygon, strategy: Strategy) -> ExplorationTrace:
    return run_strategy(PolygonEnvironment(P), strategy, P.start)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: int
    satisfied: bool
    slack: int
    applicable: bool = True


@dataclass(frozen=True)
class BoundReport:
    C: int
    E: int
    H: int
    W_cw: int
    W_ccw: int
    S: int
    L: int
    covered: bool
    closed: bool
    bounds: tuple[BoundCheck, ...]

    @property
    def excess(self) -> int:
        return self.S - self.C

    def bound(self, name: str) -> BoundCheck:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "C": self.C,
            "E": self.E,
            "H": self.H,
            "W_cw": self.W_cw,
            "W_ccw": self.W_ccw,
            "S": self.S,
            "L": self.L,
            "excess": self.excess,
            "covered": self.covered,
            "closed": self.closed,
            "bounds": {
                b.name: {"value": b.value, "satisfied": b.satisfied, "slack": b.slack, "applicable": b.applicable}
                for b in self.bounds
            },
        }


# Bound expressions, with E even so E // 2 is exact.
BOUND_NAMES = ("dfs", "smartdfs", "left_turns", "cellexplore")


def validate_trace(P: GridPolygon, t: ExplorationTrace) -> BoundReport:
    from .sinuosity import compute_sinuosity

    stats = topology_stats(P)
    sin = compute_sinuosity(P)
    C, E, H = stats.C, stats.E, stats.H
    legal = all(
        p in P.free_cells for p in t.positions
    ) and all(
        abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(t.positions, t.positions[1:])
    )
    covered = legal and P.free_cells <= set(t.positions)
    closed = bool(t.positions) and t.positions[0] == P.start and t.positions[-1] == P.start
    # left turns are only defined for a walk made of unit steps
    S, L = t.S, t.L if legal else 0
    values = {
        "dfs": (2 * C - 2, True),
        "smartdfs": (C + E // 2 - 3, H == 0),
        "left_turns": (C + E // 2 + H + 2 * L - 2, True),
        "cellexplore": (C + E // 2 + 3 * H + sin.W_cw - 2, True),
    }
    checks = tuple(
        BoundCheck(name, v, S <= v, v - S, applicable) for name, (v, applicable) in values.items()
    )
    return BoundReport(C, E, H, sin.W_cw, sin.W_ccw, S, L, covered, closed, checks)


def stats_json(P: GridPolygon, t: ExplorationTrace) -> str:
    return json.dumps(validate_trace(P, t).to_dict(), sort_keys=True)


__all__ = [
    "BoundCheck",
    "BoundReport",
    "Environment",
    "ExplorationTrace",
    "IllegalMove",
    "IncompleteCoverage",
    "KnownMap",
    "NotClosedTour",
    "PolygonEnvironment",
    "Robot",
    "SensorView",
    "SimulationError",
    "StepBudgetExceeded",
    "UnknownCell",
    "run_on_polygon",
    "run_strategy",
    "validate_trace",
]
