from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional

import constants
from models.reports import VerificationReport, VerificationRow
from rubbling.engine import Distribution, is_k_solvable, is_solvable, max_pebbles_to, max_pebbles_to_set
from rubbling.graphs import Graph, cycle_graph, ladder, mobius_ladder, prism
from rubbling.ladder import LadderLayout
from rubbling.search import all_optimal_witnesses, enumerate_distributions, k_optimal_rubbling_number
from rubbling.transforms import is_smooth
from utils.errors import BudgetExceededError, InvalidParameterError, LemmaViolationError
from utils.logger import logger


class FormulaFamily(str, Enum):
    ladder = "ladder"
    prism = "prism"
    mobius = "mobius"
    cycle_2opt = "cycle_2opt"


@dataclass(frozen=True)
class FamilyFormula:
    family: FormulaFamily
    n: int
    k: int
    r: int

    @classmethod
    def of(cls, family: FormulaFamily, n: int) -> "FamilyFormula":
        k, r = divmod(n, 3)
        return cls(FormulaFamily(family), n, k, r)


def rho_opt_ladder(n: int) -> int:
    if n < 1:
        raise InvalidParameterError(f"ladder needs n >= 1, got {n}")
    f = FamilyFormula.of(FormulaFamily.ladder, n)
    return 1 + 2 * f.k if f.r == 0 else 2 + 2 * f.k


def rho_opt_prism(n: int) -> int:
    if n < 3:
        raise InvalidParameterError(f"prism needs n >= 3, got {n}")
    if n == 3:
        return 3
    f = FamilyFormula.of(FormulaFamily.prism, n)
    if f.r == 1:
        return 2 * f.k + 1
    # n = 3k or n = 3(k+1) - 1
    return 2 * f.k if f.r == 0 else 2 * (f.k + 1)


def rho_opt_mobius(n: int, cache=None) -> int:
    """Same value as the prism from n = 6 on; smaller ladders are settled by search."""
    if n < 3:
        raise InvalidParameterError(f"Mobius ladder needs n >= 3, got {n}")
    if n >= 6:
        return rho_opt_prism(n)
    return k_optimal_rubbling_number(mobius_ladder(n), 1, cache=cache).value


def rho_2opt_cycle(n: int) -> int:
    if n < 3:
        raise InvalidParameterError(f"C_n needs n >= 3, got {n}")
    return n


FAMILIES: Dict[FormulaFamily, Callable[[int], Graph]] = {
    FormulaFamily.ladder: ladder,
    FormulaFamily.prism: prism,
    FormulaFamily.mobius: mobius_ladder,
    FormulaFamily.cycle_2opt: cycle_graph,
}


def _formula(family: FormulaFamily, n: int):
    if family == FormulaFamily.ladder:
        return rho_opt_ladder(n), "formula"
    if family == FormulaFamily.prism:
        return rho_opt_prism(n), "formula"
    if family == FormulaFamily.cycle_2opt:
        return rho_2opt_cycle(n), "formula"
    if n >= 6:
        return rho_opt_mobius(n), "formula"
    return None, "derived"


def verify_family(family, n_range: Iterable[int], budget_seconds: Optional[float] = None,
                  cache=None, threads: Optional[int] = None) -> VerificationReport:
    """
    Search every n in the range and compare with the closed form. A match is
    only reported once search has exhausted every distribution one pebble smaller.
    """
    family = FormulaFamily(family)
    k = 2 if family == FormulaFamily.cycle_2opt else 1
    budget = constants.default_budget_seconds if budget_seconds is None else budget_seconds
    deadline = time.monotonic() + budget
    report = VerificationReport(family=family.value, k=k, budget_seconds=budget)

    for n in n_range:
        graph = FAMILIES[family](n)
        formula_value, provenance = _formula(family, n)
        if time.monotonic() > deadline:
            report.rows.append(VerificationRow(n=n, formula_value=formula_value, complete=False,
                                               provenance=provenance))
            continue
        started = time.perf_counter()
        try:
            result = k_optimal_rubbling_number(graph, k, threads=threads, deadline=deadline, cache=cache)
        except BudgetExceededError as e:
            logger.warning(f"{family.value} n={n}: {e.message}")
            report.rows.append(VerificationRow(n=n, formula_value=formula_value, complete=False,
                                               runtime=time.perf_counter() - started, provenance=provenance))
            continue
        if provenance == "derived":
            formula_value = result.value
        row = VerificationRow(
            n=n,
            formula_value=formula_value,
            search_value=result.value,
            witness=list(result.witness.counts),
            runtime=time.perf_counter() - started,
            provenance=provenance,
        )
        if row.match is False:
            logger.error(f"{family.value} n={n}: formula {formula_value} but search found {result.value}")
        report.rows.append(row)
    return report


def mobius_prism_comparison(n_range: Iterable[int], cache=None) -> List[Dict]:
    """Independent searches on both families side by side."""
    rows = []
    for n in n_range:
        mobius_value = k_optimal_rubbling_number(mobius_ladder(n), 1, cache=cache).value
        prism_value = k_optimal_rubbling_number(prism(n), 1, cache=cache).value
        rows.append({"n": n, "mobius": mobius_value, "prism": prism_value, "equal": mobius_value == prism_value})
    return rows


def not_2_reachable_rung_exists(layout: LadderLayout, p: Distribution,
                                optimal_size: Optional[int] = None) -> Optional[int]:
    """
    First rung of a prism that cannot gather two pebbles. Finding none for a
    solvable distribution of optimal size is reported as a counterexample.
    """
    graph = layout.graph
    if layout.is_open:
        raise InvalidParameterError("rung 2-reachability is checked on prisms")
    for i in range(layout.n):
        if max_pebbles_to_set(graph, p, layout.rung(i)) < 2:
            return i
    optimal = rho_opt_prism(layout.n) if optimal_size is None else optimal_size
    if p.size == optimal and is_solvable(graph, p):
        raise LemmaViolationError(f"every rung of prism {layout.n} is 2-reachable under {list(p.counts)}")
    return None


@dataclass
class FriendshipReport:
    n: int
    scanned: int = 0
    # smooth 2-solvable distributions of n - 1 pebbles; none exist
    solvable: List[List[int]] = field(default_factory=list)
    # distributions breaking x0 = x2 + 1
    miscounted: List[List[int]] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"n": self.n, "scanned": self.scanned, "solvable": self.solvable, "miscounted": self.miscounted}


def friendship_probe(n: int) -> FriendshipReport:
    """Scan the smooth distributions of n - 1 pebbles on C_n for 2-solvable ones."""
    graph = cycle_graph(n)
    report = FriendshipReport(n)
    for p in enumerate_distributions(graph, n - 1):
        if not is_smooth(graph, p):
            continue
        report.scanned += 1
        empty, doubled = p.counts.count(0), p.counts.count(2)
        if empty != doubled + 1:
            report.miscounted.append(list(p.counts))
        if is_k_solvable(graph, p, 2):
            report.solvable.append(list(p.counts))
    return report


@dataclass(frozen=True)
class RungCutProperties:
    variant: str
    empty_cut: bool
    left_upper_unreachable: bool
    left_lower_single: bool
    right_doubled: bool

    @property
    def all_hold(self) -> bool:
        return self.empty_cut and self.left_upper_unreachable and self.left_lower_single and self.right_doubled

    def to_dict(self) -> Dict:
        return {
            "variant": self.variant,
            "empty_cut": self.empty_cut,
            "left_upper_unreachable": self.left_upper_unreachable,
            "left_lower_single": self.left_lower_single,
            "right_doubled": self.right_doubled,
            "all_hold": self.all_hold,
        }


def _cut_at(layout: LadderLayout, p: Distribution, c: int) -> Distribution:
    """Distribution on the ladder left by removing rung c, starting at rung c + 1."""
    counts = []
    for j in range(layout.n - 1):
        upper, lower = layout.rung((c + 1 + j) % layout.n)
        counts.extend((p[upper], p[lower]))
    return Distribution(tuple(counts))


def _reflect(layout: LadderLayout, p: Distribution, c: int, across: bool, swap_rows: bool) -> Distribution:
    counts = [0] * layout.graph.vertex_count
    for v, value in enumerate(p.counts):
        i, row = layout.rung_of(v), layout.row_of(v)
        if across:
            i = (2 * c - i) % layout.n
        if swap_rows:
            row = 1 - row
        counts[2 * i + row] = value
    return Distribution(tuple(counts))


def rung_cut_properties(layout: LadderLayout, p: Distribution, c: int) -> List[RungCutProperties]:
    """
    Properties of p, its reflection across rung c, its row swap and both,
    each read on the ladder obtained by cutting rung c out of the prism.
    The left neighbour of c is the last rung of that ladder, the right one its first.
    """
    cut = LadderLayout(ladder(layout.n - 1))
    last = layout.n - 2
    rows = []
    for name, across, swap_rows in (("p", False, False), ("ref_c", True, False),
                                    ("ref_h", False, True), ("ref_c_ref_h", True, True)):
        q = _reflect(layout, p, c, across, swap_rows)
        rest = _cut_at(layout, q, c)

        def reach(v: int) -> int:
            return max_pebbles_to(cut.graph, rest, v, witness=False).max_pebbles

        rows.append(RungCutProperties(
            variant=name,
            empty_cut=layout.rung_total(q, c) == 0,
            left_upper_unreachable=reach(cut.upper(last)) == 0,
            left_lower_single=reach(cut.lower(last)) == 1,
            right_doubled=reach(cut.upper(0)) >= 2 or reach(cut.lower(0)) >= 2,
        ))
    return rows


def rung_cut_probe(n: int) -> List[Dict]:
    """Property table for every optimal prism witness and each rung it cannot 2-reach."""
    layout = LadderLayout.of(prism(n))
    table = []
    for p in all_optimal_witnesses(layout.graph):
        for c in range(n):
            if max_pebbles_to_set(layout.graph, p, layout.rung(c)) >= 2:
                continue
            variants = rung_cut_properties(layout, p, c)
            table.append({
                "witness": list(p.counts),
                "rung": c,
                "variants": [v.to_dict() for v in variants],
                "every_variant_holds": all(v.all_hold for v in variants),
            })
    return table
