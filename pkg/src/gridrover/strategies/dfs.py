"""Depth-first exploration following the left-hand rule."""

from __future__ import annotations

from ..grid import ccw, cw, reverse, step
from ..simulator import Robot
from .common import initial_direction


def explore_dfs(robot: Robot) -> None:
    d0 = initial_direction(robot)
    known = robot.known
    # Each frame is (cell, entry direction, remaining directions to try).
    stack = [(robot.position, d0, iter((ccw(d0), d0, cw(d0))))]
    while stack:
        cell, d, todo = stack[-1]
        nxt = next((x for x in todo if known.unexplored(step(cell, x))), None)
        if nxt is None:
            stack.pop()
            if stack:
                robot.move(reverse(d))
            continue
        robot.move(nxt)
        stack.append((robot.position, nxt, iter((ccw(nxt), nxt, cw(nxt)))))


def strategy_dfs():
    return explore_dfs
