import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_tour, poly
from gridrover.generators import gen_random_simple, gen_rectangle
from gridrover.oracle import (
    InstanceTooLarge,
    competitive_ratio,
    hamiltonian_cycle_exists,
    optimal_completion,
    optimal_tour,
    oracle_limit,
)


def small(seed):
    return gen_random_simple(seed, 1 + seed % 11)


@pytest.mark.parametrize(
    "w, h, expected",
    [
        (1, 1, 0),
        (2, 1, 2),
        (5, 1, 8),  # a path is walked out and back
        (5, 2, 10),  # boundary cycle
        (3, 3, 10),  # odd cell count: one cell is entered twice
        (4, 3, 12),
    ],
)
def test_rectangles(w, h, expected):
    assert optimal_tour(gen_rectangle(w, h)).S_opt == expected


@given(st.integers(0, 5000))
def test_matches_brute_force(seed):
    P = small(seed)
    assert optimal_tour(P).S_opt == brute_force_tour(P)


@given(st.integers(0, 5000))
def test_tour_is_a_covering_closed_walk(seed):
    P = small(seed)
    res = optimal_tour(P)
    tour = res.tour
    assert tour[0] == tour[-1] == P.start
    assert set(tour) == P.free_cells
    assert len(tour) - 1 == res.S_opt
    assert all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(tour, tour[1:]))


@given(st.integers(0, 5000))
def test_hamiltonian_iff_optimum_is_cell_count(seed):
    P = small(seed)
    S_opt = optimal_tour(P).S_opt
    assert S_opt >= len(P.free_cells) or len(P.free_cells) == 1
    assert hamiltonian_cycle_exists(P) == (S_opt == len(P.free_cells))


def test_completion_after_leaving_the_wall():
    # 2x3 block, robot went east then south: 6 more steps instead of 4
    P = gen_rectangle(3, 2)
    assert optimal_completion(P, {(0, 0), (1, 0), (1, 1)}, (1, 1)) == 6
    assert optimal_completion(P, {(0, 0)}, (0, 0)) == 6


def test_limit(monkeypatch):
    P = gen_rectangle(5, 4)
    with pytest.raises(InstanceTooLarge):
        optimal_tour(P)
    monkeypatch.setenv("GRIDROVER_ORACLE_LIMIT", "20")
    assert oracle_limit() == 20
    assert optimal_tour(P).S_opt == 20


def test_competitive_ratio_of_dfs_on_a_path():
    P = poly("""
        ######
        #S...#
        ######
    """)
    assert competitive_ratio(P, "dfs") == 1
