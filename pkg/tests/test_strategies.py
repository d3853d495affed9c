import pytest
from hypothesis import given, strategies as st

from conftest import poly
from gridrover.generators import gen_comb, gen_corridor, gen_random_holey, gen_random_simple, gen_rectangle
from gridrover.generators.random import TargetInfeasible
from gridrover.grid import cell_layers, perimeter
from gridrover.simulator import PolygonEnvironment, Robot, run_on_polygon, validate_trace
from gridrover.strategies import STRATEGIES, STRATEGY_BOUNDS, detect_split, get_strategy
from gridrover.strategies.smartdfs import TYPE_III, classify_components, online_layer

seeds = st.integers(0, 10_000)


def simple(seed):
    return gen_random_simple(seed, 2 + seed % 90)


def holey(seed):
    for k in range(20):
        try:
            return gen_random_holey(seed + 104729 * k, 30 + seed % 70, 1 + seed % 3)
        except TargetInfeasible:
            continue
    pytest.skip("no holey polygon for this seed")


def run(P, name):
    t = run_on_polygon(P, get_strategy(name))
    report = validate_trace(P, t)
    assert report.covered and report.closed
    return report, t


def test_unknown_strategy():
    with pytest.raises(ValueError):
        get_strategy("bfs")


@pytest.mark.parametrize("name", sorted(STRATEGIES))
def test_every_strategy_explores_a_corridor(corridor_1x5, name):
    report, _ = run(corridor_1x5, name)
    # a dead-end corridor is walked out and back by anyone
    assert report.S == 8


@given(seeds)
def test_dfs_takes_exactly_2c_minus_2(seed):
    P = simple(seed)
    report, _ = run(P, "dfs")
    assert report.S == 2 * report.C - 2


@given(seeds)
def test_dfs_with_holes(seed):
    P = holey(seed)
    report, _ = run(P, "dfs")
    assert report.S == 2 * report.C - 2


@given(seeds)
def test_smartdfs_bound(seed):
    P = simple(seed)
    report, _ = run(P, "smartdfs")
    assert report.bound("smartdfs").satisfied


@given(seeds)
def test_smartdfs_online_layers_are_true_layers(seed):
    P = simple(seed)
    robot = Robot(PolygonEnvironment(P), P.start)
    get_strategy("smartdfs")(robot)
    truth = cell_layers(P.free_cells)
    assert robot.known.annotations["layer"] == truth


@pytest.mark.parametrize("teeth, length", [(1, 3), (2, 2), (3, 4), (6, 1)])
def test_smartdfs_tight_on_combs(teeth, length):
    report, _ = run(gen_comb(teeth, length), "smartdfs")
    assert report.bound("smartdfs").slack == 0


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_smartdfs_tight_on_paths(n):
    report, _ = run(gen_rectangle(n, 1), "smartdfs")
    assert report.S == 2 * n - 2 == report.bound("smartdfs").value


@pytest.mark.parametrize("m", [2, 4, 6, 12])
def test_smartdfs_three_wide_corridors(m):
    report, _ = run(gen_corridor(3, m), "smartdfs")
    assert 3 * report.S == 4 * report.C - 6


def test_split_cell_postpones_the_layer_component():
    # entering (4, 3) cuts off the one-cell pocket to the east (walled in on
    # both ends: type II) from the rest of layer 1 to the west (type III)
    P = poly("""
        #######
        #S...##
        #....##
        #.....#
        #...###
        #######
    """)
    robot = Robot(PolygonEnvironment(P), P.start)
    get_strategy("smartdfs")(robot)
    (event,) = [e for e in robot.known.annotations["splits"] if e.split_cell == (4, 3)]
    assert event.layer == 1
    assert [(c.kind, c.directions) for c in event.components] == [("II", (1,)), (TYPE_III, (3,))]
    path = robot.trace().positions
    assert path.index((5, 3)) < path.index((3, 3))


def test_detect_split_on_a_hand_made_map():
    P = poly("""
        #######
        #S....#
        ###.###
        #.....#
        #######
    """)
    robot = Robot(PolygonEnvironment(P), P.start)
    for d in (1, 1):  # east twice, to (3, 1)
        robot.move(d)
    robot.known.annotations["layer"] = {c: online_layer(robot.known, c) for c in robot.known.visited}
    assert not detect_split(robot.known, (3, 1))
    robot.move(2)  # south into the neck
    robot.known.annotations["layer"][(3, 2)] = 1
    robot.move(2)
    robot.known.annotations["layer"][(3, 3)] = 1
    assert detect_split(robot.known, (3, 3))
    event = classify_components(robot.known, (3, 3), 1)
    assert len(event.components) == 2


@pytest.mark.parametrize("w, h", [(2, 2), (4, 2), (4, 4), (6, 4), (8, 6)])
def test_cellexplore_is_optimal_on_even_rectangles(w, h):
    report, _ = run(gen_rectangle(w, h), "cellexplore")
    assert report.S == report.C


@pytest.mark.parametrize("name", ["cellexplore", "cellexplore-sp"])
@given(seed=seeds)
def test_cellexplore_bounds_with_holes(name, seed):
    P = holey(seed)
    report, _ = run(P, name)
    for bound in STRATEGY_BOUNDS[name]:
        assert report.bound(bound).satisfied, bound


@pytest.mark.parametrize("name", ["cellexplore", "cellexplore-sp"])
@given(seed=seeds)
def test_cellexplore_bounds_simple(name, seed):
    report, _ = run(simple(seed), name)
    for bound in STRATEGY_BOUNDS[name]:
        assert report.bound(bound).satisfied, bound


SPIRAL_WITH_HOLE = """
    #########
    ###....##
    ####.####
    ####..###
    ####...##
    #..S...##
    ##.#..###
    ##.##..##
    ##..##.##
    ###.#...#
    ###...#.#
    ####.####
    #########
"""


@pytest.mark.parametrize("name", ["cellexplore", "cellexplore-sp"])
def test_cellexplore_does_not_revisit_settled_return_cells(name):
    # once walked over on the way to another target, a reserved cell is not
    # a target any more; visiting it again cost two steps over the bound
    P = poly(SPIRAL_WITH_HOLE)
    report, _ = run(P, name)
    assert report.bound("cellexplore").slack >= 1
    assert report.S <= 64


@given(seeds)
def test_strategies_respect_the_trivial_bounds(seed):
    P = simple(seed)
    E = perimeter(P.free_cells)
    C = len(P.free_cells)
    for name in STRATEGIES:
        report, _ = run(P, name)
        assert C - 1 <= report.S <= 2 * C - 2 + E
