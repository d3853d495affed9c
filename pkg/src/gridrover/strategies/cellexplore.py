"""CellExplore: forward/backward exploration with a reserved return path.

In forward mode the robot follows the left-hand rule over cells that are
neither explored nor reserved, and reserves the cells to the right of its
path on a stack.  When stuck it switches to backward mode and pops the
stack, visiting the reserved cells on the way home.  Any unexplored,
unreserved neighbour met in backward mode (a division cell) switches back
to forward mode.
"""

from __future__ import annotations

from ..grid import Cell, ccw, cw, neighbors4, reverse, shortest_known_path, step
from ..simulator import Robot
from .common import initial_direction

FORWARD, BACKWARD = "F", "B"


class CellExplorer:
    def __init__(self, robot: Robot, shortcut: bool = False):
        self.robot = robot
        self.known = robot.known
        self.shortcut = shortcut
        self.reserved: set[Cell] = set()
        self.stack: list[Cell] = []
        self.division_cells: list[Cell] = []
        # cell -> forward cell that reserved it
        self.reserved_by: dict[Cell, Cell] = {}
        ann = self.known.annotations
        ann["reserved"] = self.reserved
        ann["stack"] = self.stack
        ann["reserved_by"] = self.reserved_by
        ann["division_cells"] = self.division_cells

    def open_cell(self, c: Cell) -> bool:
        return self.known.unexplored(c) and c not in self.reserved

    def _reservable(self, c: Cell) -> bool:
        k = self.known
        return c not in k.visited and c not in self.reserved and c not in k.sensed_blocked

    def _has_open_neighbor(self) -> bool:
        return any(self.open_cell(n) for n in neighbors4(self.robot.position))

    def forward_step(self, heading: int) -> bool:
        pos = self.robot.position
        known = self.known
        choice = next(
            (d for d in (ccw(heading), heading, cw(heading), reverse(heading)) if self.open_cell(step(pos, d))),
            None,
        )
        if choice is None:
            return False
        if choice == cw(heading):
            # the cell on the right is the one being entered, and the return
            # path bends around the corner by itself
            self.robot.move(choice, FORWARD)
            return True
        right = step(pos, cw(heading))
        if choice == ccw(heading):
            front = step(pos, heading)
            if right in known.sensed_blocked and front in known.sensed_blocked:
                # front-right only touches us diagonally; nothing leads back to it
                cells = [right, front]
            else:
                # push order makes the pops walk front, front-right, right
                cells = [right, step(front, cw(heading)), front]
        elif choice == heading:
            cells = [right]
        else:
            cells = []
        pushed = False
        for c in cells:
            if self._reservable(c):
                self.reserved.add(c)
                self.reserved_by[c] = pos
                self.stack.append(c)
                pushed = True
        # a right-hand cell reserved earlier already carries the return path
        if not pushed and not (cells and cells[0] in self.reserved):
            self.stack.append(pos)
        self.robot.move(choice, FORWARD)
        return True

    def _next_target(self) -> Cell | None:
        known = self.known
        while self.stack:
            t = self.stack.pop()
            if t in known.sensed_blocked:
                continue
            if not known.is_known(t):
                # a touching cell that was never sensed; treat it as ordinary unexplored
                self.reserved.discard(t)
                continue
            if t == self.robot.position:
                continue
            if self.shortcut and t in known.visited:
                if not any(known.unexplored(n) for n in neighbors4(t)):
                    continue
            return t
        return None

    def backward(self) -> bool:
        """Walk the return path; True when forward mode should resume."""
        robot = self.robot
        while True:
            if self._has_open_neighbor():
                self.division_cells.append(robot.position)
                return True
            t = self._next_target()
            if t is None:
                return False
            # reserved cells known to be free are on the return path anyway
            walkable = self.known.visited | (self.reserved & self.known.sensed_free) | {t}
            path = shortest_known_path(walkable, robot.position, t)
            for nxt in path[1:]:
                robot.walk([robot.position, nxt], BACKWARD)
                if nxt != t and nxt in self.stack:
                    # passing over a pending return cell settles it
                    self.stack[:] = [c for c in self.stack if c != nxt]
                if nxt != t and self._has_open_neighbor():
                    self.stack.append(t)
                    break

    def run(self) -> None:
        robot = self.robot
        start = robot.position
        heading = initial_direction(robot)
        while True:
            while self.forward_step(heading):
                heading = robot.heading
            if not self.backward():
                break
            heading = robot.heading if robot.heading is not None else heading
        robot.walk_to(start, mode=BACKWARD)


def explore_cellexplore(robot: Robot) -> None:
    CellExplorer(robot).run()


def explore_cellexplore_sp(robot: Robot) -> None:
    CellExplorer(robot, shortcut=True).run()


def strategy_cellexplore(shortcut: bool = False):
    return explore_cellexplore_sp if shortcut else explore_cellexplore
