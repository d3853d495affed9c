import pytest
from hypothesis import given, strategies as st

from conftest import poly
from gridrover.generators import gen_random_holey, gen_random_simple, gen_rectangle
from gridrover.generators.random import TargetInfeasible
from gridrover.grid import GridPolygon, hole_count, perimeter
from gridrover.sinuosity import compute_sinuosity, odd_part, reflex_records, square_width, trace_boundaries

seeds = st.integers(0, 10_000)


def holey(seed):
    for k in range(20):
        try:
            return gen_random_holey(seed + 15485863 * k, 30 + seed % 60, 1 + seed % 3)
        except TargetInfeasible:
            continue
    pytest.skip("no holey polygon for this seed")


def test_odd_part():
    assert [odd_part(q) for q in range(7)] == [0, 0, 0, 2, 0, 4, 0]


@pytest.mark.parametrize("w, h", [(1, 1), (3, 2), (5, 5)])
def test_rectangle_has_no_reflex_vertices(w, h):
    (loop,) = trace_boundaries(gen_rectangle(w, h))
    assert loop.outer
    assert loop.reflex_indices == []
    assert len(loop.points) == 2 * (w + h)


@given(seeds)
def test_loops_cover_every_boundary_edge(seed):
    P = holey(seed)
    loops = trace_boundaries(P)
    assert sum(len(lp.points) for lp in loops) == perimeter(P.free_cells)
    assert sum(not lp.outer for lp in loops) == hole_count(P.free_cells)
    assert loops[0].outer


@given(seeds)
def test_turning_numbers(seed):
    P = holey(seed)
    for loop in trace_boundaries(P):
        turns = [loop.turn_at(i) for i in range(len(loop.points))]
        right, left = turns.count(1), turns.count(-1)
        # clockwise outer walk, counterclockwise around each hole
        assert right - left == (4 if loop.outer else -4)


def _brute_square(P, corner, grow):
    px, py = corner
    gx, gy = grow
    k = 0
    while True:
        cells = {
            (px + i if gx > 0 else px - 1 - i, py + j if gy > 0 else py - 1 - j)
            for i in range(k + 1)
            for j in range(k + 1)
        }
        if not cells <= P.free_cells:
            return k
        k += 1


@given(seeds)
def test_square_widths_match_brute_force(seed):
    P = gen_random_simple(seed, 10 + seed % 80)
    for loop in trace_boundaries(P):
        for rec in reflex_records(P, loop):
            assert rec.square_width == _brute_square(P, rec.vertex, rec.grow) >= 1
            assert square_width(P, rec.vertex, rec.grow) == rec.square_width


@given(seeds)
def test_both_sinuosities_share_all_contributions(seed):
    P = gen_random_simple(seed, 10 + seed % 80)
    rep = compute_sinuosity(P)
    total = sum(r.odd_contribution for loop in rep.records for r in loop)
    assert rep.W_cw + rep.W_ccw == total + rep.q_start_cw + rep.q_start_ccw
    assert rep.W_cw % 2 == 0 and rep.W_ccw % 2 == 0


def test_staircase():
    # each inner corner of the staircase sees a 1x1 square: even, no contribution
    P = poly("""
        #####
        #S###
        #..##
        #...#
        #####
    """)
    rep = compute_sinuosity(P)
    (loop,) = rep.records
    assert [r.square_width for r in loop] == [1, 1]
    assert rep.W_cw - rep.q_start_ccw == 0


def test_diamond_has_two_reflex_vertices_per_side():
    P = poly("""
        #######
        ###S###
        ##...##
        #.....#
        ##...##
        ###.###
        #######
    """)
    (loop,) = trace_boundaries(P)
    assert len(loop.reflex_indices) == 8


@pytest.mark.parametrize("start", [(0, 0), (0, 2), (4, 0)])
def test_corner_start_square_counts_clockwise(start):
    # in a corner the wall continues clockwise on the robot's left, so only the
    # square on its right can grow: 3 wide, and it goes to W_cw
    P = GridPolygon(gen_rectangle(5, 3).free_cells, start)
    rep = compute_sinuosity(P)
    assert (rep.q_start_cw, rep.q_start_ccw) == (0, 2)
    assert (rep.W_cw, rep.W_ccw) == (2, 0)
