import pytest

from rubbling.engine import Distribution
from rubbling.graphs import ladder, mobius_ladder, prism
from rubbling.ladder import LadderLayout
from rubbling.search import all_optimal_witnesses, optimal_rubbling_number
from rubbling.theorems import (
    FormulaFamily,
    friendship_probe,
    mobius_prism_comparison,
    not_2_reachable_rung_exists,
    rho_2opt_cycle,
    rho_opt_ladder,
    rho_opt_mobius,
    rho_opt_prism,
    rung_cut_probe,
    rung_cut_properties,
    verify_family,
)
from utils.errors import InvalidParameterError, LemmaViolationError


def test_ladder_formula():
    assert [rho_opt_ladder(n) for n in range(1, 10)] == [2, 2, 3, 4, 4, 5, 6, 6, 7]
    with pytest.raises(InvalidParameterError):
        rho_opt_ladder(0)


def test_prism_formula():
    assert [rho_opt_prism(n) for n in range(3, 11)] == [3, 3, 4, 4, 5, 6, 6, 7]
    with pytest.raises(InvalidParameterError):
        rho_opt_prism(2)


def test_mobius_and_cycle_formulas():
    assert rho_opt_mobius(6) == 4
    assert rho_opt_mobius(7) == 5
    assert rho_opt_mobius(4) == optimal_rubbling_number(mobius_ladder(4)).value
    assert [rho_2opt_cycle(n) for n in (3, 5, 8)] == [3, 5, 8]
    with pytest.raises(InvalidParameterError):
        rho_2opt_cycle(2)
    with pytest.raises(InvalidParameterError):
        rho_opt_mobius(2)


@pytest.mark.parametrize("family, n_range", [
    (FormulaFamily.ladder, range(2, 7)),
    (FormulaFamily.prism, range(3, 7)),
    (FormulaFamily.cycle_2opt, range(3, 9)),
])
def test_verify_family_matches(family, n_range):
    report = verify_family(family, n_range, budget_seconds=3600)
    assert report.complete
    assert [row.n for row in report.rows] == list(n_range)
    assert all(row.match for row in report.rows)
    assert report.mismatches == []
    assert "| yes |" in report.to_markdown()


def test_verify_family_marks_mobius_rows_derived():
    report = verify_family("mobius", range(4, 7), budget_seconds=3600)
    assert [row.provenance for row in report.rows] == ["derived", "derived", "formula"]
    assert all(row.match for row in report.rows)


def test_exhausted_budget_leaves_rows_incomplete():
    report = verify_family(FormulaFamily.ladder, range(5, 7), budget_seconds=0)
    assert not report.complete
    assert all(row.match is None for row in report.rows)
    assert report.mismatches == []
    assert "Budget exhausted" in report.to_markdown()
    assert report.model_dump()["complete"] is False


def test_mobius_prism_comparison():
    rows = mobius_prism_comparison(range(3, 7))
    assert all(row["equal"] for row in rows if row["n"] >= 4)
    assert rows[0]["n"] == 3
    assert rows[0]["prism"] == 3


@pytest.mark.parametrize("n", [5, 6])
def test_optimal_prism_witnesses_leave_a_rung_short(n):
    layout = LadderLayout.of(prism(n))
    witnesses = all_optimal_witnesses(layout.graph)
    assert witnesses
    for p in witnesses:
        assert not_2_reachable_rung_exists(layout, p) is not None


def test_oversized_distribution_is_not_an_alarm():
    layout = LadderLayout.of(prism(5))
    # one pebble on every upper vertex: each rung gathers two, solvable with 5 > 4 pebbles
    p = Distribution((1, 0) * 5)
    assert not_2_reachable_rung_exists(layout, p) is None
    with pytest.raises(LemmaViolationError):
        not_2_reachable_rung_exists(layout, p, optimal_size=p.size)
    with pytest.raises(InvalidParameterError):
        not_2_reachable_rung_exists(LadderLayout.of(ladder(5)), Distribution.empty(10))


@pytest.mark.parametrize("n", range(3, 8))
def test_no_smooth_two_solvable_cycle_distribution(n):
    report = friendship_probe(n)
    assert report.scanned > 0
    assert report.solvable == []
    assert report.miscounted == []


def test_rung_cut_properties_cover_four_variants():
    layout = LadderLayout.of(prism(5))
    p = all_optimal_witnesses(layout.graph)[0]
    c = not_2_reachable_rung_exists(layout, p)
    variants = rung_cut_properties(layout, p, c)
    assert [v.variant for v in variants] == ["p", "ref_c", "ref_h", "ref_c_ref_h"]
    assert all(v.empty_cut == variants[0].empty_cut for v in variants)


@pytest.mark.parametrize("n", [5, 6])
def test_rung_cut_probe_never_satisfies_every_variant(n):
    table = rung_cut_probe(n)
    assert table
    for row in table:
        assert len(row["variants"]) == 4
        assert not row["every_variant_holds"], row
