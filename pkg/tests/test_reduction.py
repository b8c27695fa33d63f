from fractions import Fraction

import pytest

from conftest import all_distributions, dist
from rubbling.engine import Distribution, is_solvable
from rubbling.graphs import ladder, prism
from rubbling import reduction
from rubbling.ladder import LadderLayout, WindowLabels
from rubbling.reduction import (
    Certificate,
    admissible_windows,
    build_reduced,
    candidate_reductions,
    check_inequalities,
    delete_window,
    method_placements,
    ordered_candidates,
    reduce,
    select_max_window,
)
from rubbling.search import all_optimal_witnesses
from utils.errors import (
    GraphTooSmallError,
    InvalidLayoutError,
    InvalidParameterError,
    LemmaViolationError,
    NoCandidatesError,
)


def test_admissible_windows(ladder6):
    assert [w.start for w in admissible_windows(ladder6)] == [1, 2]
    assert admissible_windows(LadderLayout.of(ladder(4))) == []


def test_select_max_window(ladder5, ladder6):
    assert select_max_window(ladder5, Distribution.single(10, 4, 4)) == WindowLabels.from_start(1)
    # every window is empty; the leftmost one wins
    assert select_max_window(ladder6, Distribution.single(12, 0, 4)).start == 1
    assert select_max_window(ladder6, Distribution.single(12, 8, 3)).start == 2
    uniform = Distribution(tuple([1] * 12))
    assert select_max_window(ladder6, uniform).start == 1
    with pytest.raises(GraphTooSmallError):
        select_max_window(LadderLayout.of(ladder(4)), Distribution.empty(8))


def test_delete_window(ladder5, ladder6):
    deleted = delete_window(ladder6, WindowLabels.from_start(1))
    assert deleted.layout.n == 3
    assert deleted.vertex_map == (0, 1, None, None, None, None, None, None, 2, 3, 4, 5)
    deleted = delete_window(ladder5, WindowLabels.from_start(1))
    assert deleted.layout.graph.edges == ladder(2).edges
    kept = [v for v in deleted.vertex_map if v is not None]
    assert sorted(kept) == list(range(4))
    with pytest.raises(InvalidParameterError):
        delete_window(ladder5, WindowLabels.from_start(2))


def test_candidate_counts(ladder5):
    window = WindowLabels.from_start(1)
    four = dist(0, 0, 2, 0, 1, 0, 0, 1, 0, 0)
    candidates = list(candidate_reductions(ladder5, four, window))
    assert len(candidates) == 40
    assert all(c.distribution.size == four.size - 2 for c in candidates)
    two = dist(1, 0, 1, 0, 0, 0, 1, 0, 0, 1)
    candidates = list(candidate_reductions(ladder5, two, window))
    assert len(candidates) == 4
    # nothing lies beyond the boundary rungs, so the reflections agree
    assert {c.distribution for c in candidates} == {dist(1, 0, 0, 1)}
    with pytest.raises(NoCandidatesError):
        list(candidate_reductions(ladder5, dist(1, 0, 1, 0, 0, 0, 0, 0, 0, 1), window))


def test_candidates_keep_boundary_pebbles(ladder5):
    window = WindowLabels.from_start(1)
    p = dist(1, 2, 0, 3, 0, 0, 0, 0, 0, 1)
    for candidate in candidate_reductions(ladder5, p, window):
        q = candidate.distribution
        assert q[0] + q[1] >= 3
        assert q[3] + q[2] >= 1


def test_main_method_deltas(ladder5):
    window = WindowLabels.from_start(1)
    p = dist(0, 0, 3, 0, 1, 0, 1, 0, 0, 0)
    assert ("main", (2, 0, 1, 0)) in method_placements(ladder5, p, window)
    candidate = build_reduced(ladder5, p, window, (2, 0, 1, 0), method="main")
    assert candidate.distribution == dist(2, 0, 1, 0)
    report = check_inequalities(ladder5, p, candidate)
    assert report.modified == (Fraction(5, 8), Fraction(5, 16), Fraction(7, 8), Fraction(7, 16))
    assert report.original == (1, 1, 1, 1)
    assert report.modified_holds and report.original_holds


def test_untouched_window_never_loses_weight(ladder6):
    for window in admissible_windows(ladder6):
        for p in all_distributions(12, 3):
            if any(ladder6.rung_total(p, i) for i in range(window.a, window.b + 1)):
                continue
            report = check_inequalities(ladder6, p, build_reduced(ladder6, p, window, (0, 0, 0, 0)))
            assert report.modified_holds, (p.counts, window.start)


def test_negative_delta_is_reported(ladder5):
    p = Distribution.single(10, 2, 4)
    candidate = build_reduced(ladder5, p, WindowLabels.from_start(1), (0, 2, 0, 0))
    report = check_inequalities(ladder5, p, candidate)
    assert report.modified[0] == -1
    assert report.original[0] == -1
    assert not report.modified_holds


def test_reflections_swap_rows_beyond_the_boundary(ladder6):
    p = dist(0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 2, 0)
    plain = build_reduced(ladder6, p, WindowLabels.from_start(1), (0, 0, 0, 0))
    mirrored = build_reduced(ladder6, p, WindowLabels.from_start(1), (0, 0, 0, 0), (False, True))
    assert plain.distribution == dist(0, 0, 0, 0, 2, 0)
    assert mirrored.distribution == dist(0, 0, 0, 0, 0, 2)


def test_method_candidates_come_first(ladder5):
    p = dist(0, 0, 3, 0, 1, 0, 1, 0, 0, 0)
    ordered = ordered_candidates(ladder5, p, WindowLabels.from_start(1))
    assert ordered[0].method is not None
    pairs = [(c.placement, c.reflections) for c in ordered]
    assert len(pairs) == len(set(pairs)) == 80


def test_reduce_rejects_bad_input(ladder5):
    with pytest.raises(GraphTooSmallError):
        reduce(LadderLayout.of(ladder(4)), Distribution.single(8, 2, 4))
    with pytest.raises(InvalidParameterError):
        reduce(ladder5, Distribution.single(10, 0, 1))
    with pytest.raises(InvalidLayoutError):
        reduce(LadderLayout.of(prism(5)), Distribution.single(10, 0, 8))


def _check_reductions(layout, max_size):
    reduced = 0
    for p in all_distributions(layout.graph.vertex_count, max_size):
        if max(w.total(layout, p) for w in admissible_windows(layout)) < 3:
            continue
        if not is_solvable(layout.graph, p):
            continue
        result = reduce(layout, p, verify=True)
        assert result.layout.n == layout.n - 3
        assert result.distribution.size == p.size - 2
        assert is_solvable(result.graph, result.distribution), p.counts
        assert result.certificate in Certificate
        reduced += 1
    return reduced


def test_reduce_is_sound_on_ladder5(ladder5):
    assert _check_reductions(ladder5, 6) > 0


def test_modified_inequalities_only_certify_solvable_reductions(ladder5):
    checked = 0
    for p in all_distributions(ladder5.graph.vertex_count, 6):
        windows = [w for w in admissible_windows(ladder5) if w.total(ladder5, p) >= 4]
        if not windows or not is_solvable(ladder5.graph, p):
            continue
        for window in windows:
            for candidate in candidate_reductions(ladder5, p, window):
                if check_inequalities(ladder5, p, candidate).modified_holds:
                    assert is_solvable(candidate.graph, candidate.distribution), (p.counts, candidate.distribution.counts)
                    checked += 1
    assert checked > 0


def test_reduce_refuses_an_unsolvable_modified_certificate(ladder5, monkeypatch):
    p = dist(1, 1, 0, 0, 4, 0, 0, 0, 1, 1)
    monkeypatch.setattr(reduction, "_certifies", lambda *args: True)
    monkeypatch.setattr(reduction, "is_solvable", lambda graph, q: graph.vertex_count == 10)
    with pytest.raises(LemmaViolationError):
        reduce(ladder5, p, verify=True)


@pytest.mark.slow
def test_reduce_is_sound_on_ladder6(ladder6):
    assert _check_reductions(ladder6, 6) > 0


def test_reduce_optimal_ladder6_witnesses(ladder6):
    witnesses = all_optimal_witnesses(ladder6.graph)
    assert witnesses
    for p in witnesses:
        assert p.size == 5
        if max(w.total(ladder6, p) for w in admissible_windows(ladder6)) < 3:
            continue
        result = reduce(ladder6, p)
        assert result.distribution.size == 3
        assert is_solvable(result.graph, result.distribution)
