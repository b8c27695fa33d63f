import math
from fractions import Fraction

import pytest
from hypothesis import given, seed, settings, strategies as st

from conftest import all_distributions, dist
from constants import default_seed
from rubbling.engine import Distribution, Move, is_solvable, reach_profile, replay
from rubbling.graphs import Graph, ladder, prism
from rubbling.ladder import (
    LadderLayout,
    Side,
    WindowLabels,
    a_biased_exceptions,
    a_biased_reachable_set,
    check_floor_exactness,
    find_a_biased_sequence,
    greedy_rubbling,
    is_a_biased,
    left_weight,
    p_dependent,
    right_weight,
    side_reach,
    two_pebble_window_violations,
    window_sum_bound_check,
    window_sums,
)
from utils.errors import InvalidLayoutError, InvalidParameterError


def test_layout_rejects_other_families():
    with pytest.raises(InvalidLayoutError):
        LadderLayout.of(Graph.from_edges(3, [(0, 1), (1, 2)]))
    with pytest.raises(InvalidLayoutError):
        left_weight(LadderLayout.of(prism(4)), Distribution.empty(8), 0)


def test_rung_helpers(ladder4):
    assert ladder4.rung(2) == (4, 5)
    assert ladder4.rung_of(7) == 3
    assert ladder4.partner(4) == 5
    assert ladder4.side_vertices(4, Side.left) == [0, 1, 2, 3, 4, 5]
    assert ladder4.side_vertices(4, Side.right) == [4, 5, 6, 7]


def test_weights():
    l3 = LadderLayout.of(ladder(3))
    p = dist(0, 0, 3, 0, 0, 0)
    assert left_weight(l3, p, 2) == right_weight(l3, p, 2) == 3
    partner = dist(0, 0, 0, 1, 0, 0)
    assert left_weight(l3, partner, 2) == right_weight(l3, partner, 2) == Fraction(1, 2)
    # one pebble two steps to the left
    assert left_weight(l3, dist(1, 0, 0, 0, 0, 0), 4) == Fraction(1, 4)
    assert right_weight(l3, dist(1, 0, 0, 0, 0, 0), 4) == 0


def test_side_reach_of_concentrated_distribution(ladder4):
    p = Distribution.single(8, 2, 3)
    reach = side_reach(ladder4, p, 2)
    assert (reach.left, reach.right) == (3, 3)


def test_floor_exactness_of_empty_distribution(ladder4):
    assert check_floor_exactness(ladder4, Distribution.empty(8), 3)


def test_floor_exactness_exhaustive(ladder4):
    for p in all_distributions(8, 5):
        for v in range(8):
            reach = side_reach(ladder4, p, v)
            assert reach.left == math.floor(left_weight(ladder4, p, v)), (p.counts, v)
            assert reach.right == math.floor(right_weight(ladder4, p, v)), (p.counts, v)


@seed(default_seed)
@settings(max_examples=200)
@given(st.lists(st.integers(0, 11), max_size=8), st.integers(0, 11))
def test_floor_exactness_random(pebbles, v):
    layout = LadderLayout.of(ladder(6))
    p = Distribution(tuple(pebbles.count(x) for x in range(12)))
    assert check_floor_exactness(layout, p, v)


def test_greedy_examples():
    l2 = LadderLayout.of(ladder(2))
    moves = greedy_rubbling(l2, dist(2, 0, 0, 0), 2, Side.left)
    assert list(moves) == [Move.pebbling(0, 2)]
    assert len(greedy_rubbling(l2, dist(0, 0, 3, 0), 2, Side.left)) == 0

    l3 = LadderLayout.of(ladder(3))
    p = dist(2, 1, 0, 0, 0, 0)
    after = replay(l3.graph, p, greedy_rubbling(l3, p, 2, Side.left))
    assert after[2] == side_reach(l3, p, 2).left == 1


def test_greedy_reaches_floor_weight(ladder4):
    for p in all_distributions(8, 5):
        for v in range(8):
            for side in Side:
                after = replay(ladder4.graph, p, greedy_rubbling(ladder4, p, v, side))
                reach = side_reach(ladder4, p, v)
                assert after[v] == (reach.left if side == Side.left else reach.right)


def test_is_a_biased(ladder5):
    assert is_a_biased([], ladder5, 2)
    # moves that never touch rung 2
    assert is_a_biased([Move.pebbling(0, 2), Move.pebbling(8, 6)], ladder5, 2)
    # exports from both vertices of rung 2
    assert not is_a_biased([Move.pebbling(4, 2), Move.pebbling(5, 3)], ladder5, 2)
    # pebbles moving inside rung 2 do not count as exports
    assert is_a_biased([Move.pebbling(4, 5), Move.pebbling(5, 3)], ladder5, 2)


def test_find_a_biased_sequence(ladder5):
    p = Distribution.single(10, 0, 1).with_added(4, 2)
    assert len(find_a_biased_sequence(ladder5, p, 0, 2)) == 0
    witness = find_a_biased_sequence(ladder5, p, 2, 2)
    assert witness is not None
    assert is_a_biased(witness, ladder5, 2)
    assert replay(ladder5.graph, p, witness)[2] >= 1
    with pytest.raises(InvalidParameterError):
        find_a_biased_sequence(ladder5, p, 6, 2)


def test_a_biased_reachable_set_needs_one_exporter(ladder5):
    # two pebbles on each vertex of rung 2; only one of them may export to the left or right
    p = dist(0, 0, 0, 0, 2, 2, 0, 0, 0, 0)
    assert a_biased_reachable_set(ladder5, p, 2) == {2, 3}


def test_a_biased_exceptions_are_rare(ladder5):
    for p in all_distributions(10, 5):
        if not is_solvable(ladder5.graph, p):
            continue
        for a in range(1, 5):
            assert len(a_biased_exceptions(ladder5, p, a)) <= 1, (p.counts, a)


def test_p_dependent(ladder4):
    # two pebbles on the upper vertex of rung 1 serve rung 0 or rung 2, never both
    p = Distribution.single(8, 2, 2)
    assert p_dependent(ladder4, p, 0, 4)
    assert p_dependent(ladder4, p, 4, 0)
    both = dist(1, 0, 0, 0, 1, 0, 0, 0)
    assert not p_dependent(ladder4, both, 0, 4)
    assert not p_dependent(ladder4, Distribution.empty(8), 0, 4)
    with pytest.raises(InvalidParameterError):
        p_dependent(ladder4, p, 2, 3)


def _dependence_gaps(layout, max_size):
    graph = layout.graph
    for p in all_distributions(graph.vertex_count, max_size):
        profile = reach_profile(graph, p)
        if min(profile) >= 1:
            continue
        for l in range(graph.vertex_count):
            for r in range(l + 1, graph.vertex_count):
                lo, hi = layout.rung_of(l), layout.rung_of(r)
                if lo == hi or not p_dependent(layout, p, l, r):
                    continue
                for v in range(2 * (lo + 1), 2 * hi):
                    if profile[v] < 1:
                        yield p.counts, l, r, v


def test_dependent_pairs_cover_the_rungs_between(ladder4):
    assert list(_dependence_gaps(ladder4, 4)) == []


@pytest.mark.slow
def test_dependent_pairs_cover_the_rungs_between_ladder5(ladder5):
    assert list(_dependence_gaps(ladder5, 5)) == []


def test_window_sums(ladder5):
    p = dist(1, 0, 0, 2, 0, 0, 1, 1, 0, 0)
    assert window_sums(ladder5, p) == [3, 4, 2]
    assert window_sums(LadderLayout.of(ladder(2)), dist(1, 2, 0, 0)) == [3]


def test_window_labels():
    window = WindowLabels.from_start(1)
    assert (window.a, window.l, window.x, window.r, window.b) == (0, 1, 2, 3, 4)
    with pytest.raises(InvalidParameterError):
        WindowLabels(0, 1, 2, 4, 5)


def test_window_sum_bound_examples(ladder5):
    assert window_sum_bound_check(ladder5, Distribution.single(10, 4, 3), 2)
    p = dist(1, 0, 0, 0, 2, 0, 0, 0, 0, 0)
    assert window_sum_bound_check(ladder5, p, 2)
    with pytest.raises(InvalidParameterError):
        window_sum_bound_check(ladder5, Distribution.single(10, 4, 4), 2)


def test_window_sum_bound_exhaustive(ladder5):
    for p in all_distributions(10, 6):
        if max(window_sums(ladder5, p)) > 3:
            continue
        for a in range(5):
            assert window_sum_bound_check(ladder5, p, a), (p.counts, a)


def test_two_pebble_windows_are_rigid(ladder5):
    for p in all_distributions(10, 4):
        if max(window_sums(ladder5, p)) > 2:
            continue
        assert two_pebble_window_violations(ladder5, p) == [], p.counts
