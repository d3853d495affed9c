from __future__ import annotations

from ..grid import DIRECTIONS, reverse, step
from ..simulator import Robot, SimulationError


def initial_direction(robot: Robot) -> int:
    """First direction (N, E, S, W order) whose reverse points at a blocked cell."""
    for d in DIRECTIONS:
        if robot.known.is_blocked(step(robot.position, reverse(d))):
            return d
    raise SimulationError(f"start {robot.position} has no wall behind it in any direction")
