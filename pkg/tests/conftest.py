from __future__ import annotations

from collections import deque

import pytest
from hypothesis import settings

from gridrover.grid import GridPolygon, parse_polygon

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def poly(doc: str) -> GridPolygon:
    return parse_polygon("\n".join(line.strip() for line in doc.strip().splitlines()))


def brute_force_tour(P: GridPolygon) -> int:
    """Shortest covering closed walk by plain BFS over (cell, visited set)."""
    cells = sorted(P.free_cells)
    index = {c: i for i, c in enumerate(cells)}
    full = (1 << len(cells)) - 1
    s = index[P.start]
    start = (s, 1 << s)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v, mask = queue.popleft()
        if mask == full and v == s:
            return dist[(v, mask)]
        x, y = cells[v]
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            u = index.get(n)
            if u is None:
                continue
            state = (u, mask | 1 << u)
            if state not in dist:
                dist[state] = dist[(v, mask)] + 1
                queue.append(state)
    raise AssertionError("unreachable")


def naive_layers(P: GridPolygon) -> dict:
    """Layers by literally peeling: strip every cell touching a blocked one, repeat."""
    remaining = set(P.free_cells)
    layers = {}
    k = 0
    while remaining:
        k += 1
        peel = {
            (x, y)
            for x, y in remaining
            if any((x + dx, y + dy) not in remaining for dx in (-1, 0, 1) for dy in (-1, 0, 1))
        }
        for c in peel:
            layers[c] = k
        remaining -= peel
    return layers


@pytest.fixture
def corridor_1x5():
    return poly("""
        #######
        #S....#
        #######
    """)


# --- acceptance report ------------------------------------------------------


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")
    config.stash[_CRITERIA] = {}


_CRITERIA = pytest.StashKey[dict]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    results = item.config.stash[_CRITERIA]
    _, ok = results.get(number, (title, True))
    results[number] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_CRITERIA, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
