from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import constants
from rubbling.engine import Distribution, is_reachable, is_solvable
from rubbling.ladder import (
    LadderLayout,
    WindowLabels,
    left_weight,
    right_weight,
)
from rubbling.graphs import ladder
from rubbling.search import compositions
from utils.errors import (
    GraphTooSmallError,
    InvalidParameterError,
    LemmaViolationError,
    NoCandidatesError,
    ReductionFailedError,
)
from utils.logger import logger


Placement = Tuple[int, int, int, int]
Reflection = Tuple[bool, bool]

# boundary roles, in placement order
BOUNDARY_ROLES = ("A_upper", "A_lower", "B_upper", "B_lower")


class Certificate(str, Enum):
    modified_inequalities = "modified_inequalities"
    original_plus_rung_check = "original_plus_rung_check"
    direct_solvability = "direct_solvability"


@dataclass(frozen=True)
class DeletedWindow:
    layout: LadderLayout
    vertex_map: Tuple[Optional[int], ...]


@dataclass(frozen=True)
class InequalityReport:
    modified: Tuple[Fraction, Fraction, Fraction, Fraction]
    original: Tuple[int, int, int, int]

    @property
    def modified_holds(self) -> bool:
        return all(delta >= 0 for delta in self.modified)

    @property
    def original_holds(self) -> bool:
        return all(delta >= 0 for delta in self.original)

    def to_dict(self) -> Dict:
        return {
            "modified": {role: str(d) for role, d in zip(BOUNDARY_ROLES, self.modified)},
            "original": dict(zip(BOUNDARY_ROLES, self.original)),
        }


@dataclass(frozen=True)
class ReducedInstance:
    layout: LadderLayout
    distribution: Distribution
    window: WindowLabels
    vertex_map: Tuple[Optional[int], ...]
    placement: Placement
    reflections: Reflection
    method: Optional[str] = None
    certificate: Optional[Certificate] = None

    @property
    def graph(self):
        return self.layout.graph

    def to_dict(self) -> Dict:
        return {
            "n": self.layout.n,
            "distribution": list(self.distribution.counts),
            "window": self.window.to_dict(),
            "placement": dict(zip(BOUNDARY_ROLES, self.placement)),
            "reflections": {"left": self.reflections[0], "right": self.reflections[1]},
            "method": self.method,
            "certificate": self.certificate.value if self.certificate else None,
        }


def boundary_vertices(window: WindowLabels) -> Tuple[int, int, int, int]:
    return (LadderLayout.upper(window.a), LadderLayout.lower(window.a),
            LadderLayout.upper(window.b), LadderLayout.lower(window.b))


def admissible_windows(layout: LadderLayout) -> List[WindowLabels]:
    layout.require_open()
    return [WindowLabels.from_start(s) for s in range(1, layout.n - 3)]


def select_max_window(layout: LadderLayout, p: Distribution) -> WindowLabels:
    """Window holding the most pebbles; the leftmost one on ties."""
    layout.require_open()
    if layout.n < 5:
        raise GraphTooSmallError(f"window reduction needs n >= 5, got {layout.n}")
    p.check_graph(layout.graph)
    windows = admissible_windows(layout)
    return max(windows, key=lambda w: (w.total(layout, p), -w.start))


def delete_window(layout: LadderLayout, window: WindowLabels) -> DeletedWindow:
    """Drop rungs l, x, r and join A to B by new rung edges."""
    layout.require_open()
    if window not in admissible_windows(layout):
        raise InvalidParameterError(f"window {window.to_dict()} does not fit a ladder of {layout.n} rungs")
    vertex_map: List[Optional[int]] = []
    for v in range(layout.graph.vertex_count):
        i = layout.rung_of(v)
        if i < window.l:
            vertex_map.append(v)
        elif i > window.r:
            vertex_map.append(v - 6)
        else:
            vertex_map.append(None)
    return DeletedWindow(LadderLayout(ladder(layout.n - 3)), tuple(vertex_map))


def build_reduced(layout: LadderLayout, p: Distribution, window: WindowLabels,
                  placement: Sequence[int], reflections: Reflection = (False, False),
                  method: Optional[str] = None) -> ReducedInstance:
    """
    Restrict p to the ladder without the window, optionally swap the rows of
    every rung left of A (resp. right of B), then add placement at A and B.
    """
    deleted = delete_window(layout, window)
    counts = [0] * deleted.layout.graph.vertex_count
    for v, target in enumerate(deleted.vertex_map):
        if target is None:
            continue
        i = layout.rung_of(v)
        mirrored = (i < window.a and reflections[0]) or (i > window.b and reflections[1])
        counts[target] = p[layout.partner(v) if mirrored else v]
    for vertex, extra in zip(boundary_vertices(window), placement):
        counts[deleted.vertex_map[vertex]] += extra
    return ReducedInstance(
        layout=deleted.layout,
        distribution=Distribution(tuple(counts)),
        window=window,
        vertex_map=deleted.vertex_map,
        placement=tuple(placement),
        reflections=tuple(reflections),
        method=method,
    )


def candidate_reductions(layout: LadderLayout, p: Distribution, window: WindowLabels) -> Iterator[ReducedInstance]:
    """
    Every way to put p(R) - 2 pebbles on the boundary rungs, each with the
    four combinations of side reflections.
    """
    held = window.total(layout, p)
    if held < 2:
        raise NoCandidatesError(f"window {window.to_dict()} holds {held} pebbles")
    for placement in compositions(held - 2, 4):
        for reflections in itertools.product((False, True), repeat=2):
            yield build_reduced(layout, p, window, placement, reflections)


def _frame_rungs(layout: LadderLayout, p: Distribution, window: WindowLabels,
                 mirror: bool, swap_rows: bool) -> Dict[str, Tuple[int, int]]:
    names = {"l": window.l, "x": window.x, "r": window.r}
    if mirror:
        names["l"], names["r"] = window.r, window.l
    rungs = {}
    for name, i in names.items():
        up, low = p[layout.upper(i)], p[layout.lower(i)]
        rungs[name] = (low, up) if swap_rows else (up, low)
    return rungs


def _unframe(placement: Sequence[int], mirror: bool, swap_rows: bool) -> Placement:
    actual = [0, 0, 0, 0]
    for role, extra in enumerate(placement):
        side, row = divmod(role, 2)
        if mirror:
            side = 1 - side
        if swap_rows:
            row = 1 - row
        actual[2 * side + row] = extra
    return tuple(actual)


def _framed_methods(rungs: Dict[str, Tuple[int, int]]) -> List[Tuple[str, List[int]]]:
    (lu, ll), (xu, xl), (ru, rl) = rungs["l"], rungs["x"], rungs["r"]
    held = lu + ll + xu + xl + ru + rl
    standard = [lu + xu, ll, ru, xl + rl]
    routed = [lu + xu, ll + xl, ru + rl, 0]
    found = []
    if lu + xu >= 4:
        found.append(("main", [standard[0] - 2] + standard[1:]))
    if lu + xu >= 2 and xl + rl >= 2:
        found.append(("I", [standard[0] - 1, standard[1], standard[2], standard[3] - 1]))
    if held >= 5 and lu + xu == 3 and xl + rl >= 1:
        found.append(("II", [routed[0] - 2] + routed[1:]))
    if lu + xu == 2 and rl + xl <= 1 and ll + xl >= 2:
        found.append(("III", [routed[0] - 1, routed[1] - 1, routed[2], routed[3]]))
    if lu + xu == 2 and rl + xl <= 1 and ru + rl >= 2 and held >= 5:
        found.append(("IV", [routed[0] - 1, routed[1], routed[2] - 1, routed[3]]))
    return found


def method_placements(layout: LadderLayout, p: Distribution, window: WindowLabels) -> List[Tuple[str, Placement]]:
    """Routing heuristics that apply to the window under any of its four symmetries."""
    placements = []
    for mirror, swap_rows in itertools.product((False, True), repeat=2):
        rungs = _frame_rungs(layout, p, window, mirror, swap_rows)
        for name, framed in _framed_methods(rungs):
            placement = _unframe(framed, mirror, swap_rows)
            if all(extra >= 0 for extra in placement) and placement not in [q for _, q in placements]:
                placements.append((name, placement))
    return placements


def ordered_candidates(layout: LadderLayout, p: Distribution, window: WindowLabels) -> List[ReducedInstance]:
    seen = set()
    ordered = []
    for name, placement in method_placements(layout, p, window):
        for reflections in itertools.product((False, True), repeat=2):
            seen.add((placement, reflections))
            ordered.append(build_reduced(layout, p, window, placement, reflections, method=name))
    for candidate in candidate_reductions(layout, p, window):
        if (candidate.placement, candidate.reflections) not in seen:
            ordered.append(candidate)
    return ordered


def check_inequalities(layout: LadderLayout, p: Distribution, candidate: ReducedInstance) -> InequalityReport:
    """
    Compare the pebbles the boundary rungs can draw from beyond the cut,
    before and after the reduction: from the right at A, from the left at B.
    """
    reduced = candidate.layout
    q = candidate.distribution
    modified, original = [], []
    for role, vertex in enumerate(boundary_vertices(candidate.window)):
        image = candidate.vertex_map[vertex]
        if role < 2:
            before, after = right_weight(layout, p, vertex), right_weight(reduced, q, image)
        else:
            before, after = left_weight(layout, p, vertex), left_weight(reduced, q, image)
        modified.append(after - before)
        original.append(math.floor(after) - math.floor(before))
    return InequalityReport(tuple(modified), tuple(original))


def _certifies(certificate: Certificate, layout: LadderLayout, p: Distribution,
               candidate: ReducedInstance) -> bool:
    if certificate == Certificate.direct_solvability:
        return is_solvable(candidate.graph, candidate.distribution)
    report = check_inequalities(layout, p, candidate)
    if certificate == Certificate.modified_inequalities:
        return candidate.window.total(layout, p) >= 4 and report.modified_holds
    return report.original_holds and all(
        is_reachable(candidate.graph, candidate.distribution, candidate.vertex_map[v])
        for v in boundary_vertices(candidate.window))


def _window_order(layout: LadderLayout, p: Distribution) -> List[WindowLabels]:
    selected = select_max_window(layout, p)
    return sorted(
        (w for w in admissible_windows(layout) if w.total(layout, p) >= 2),
        key=lambda w: (w != selected, abs(w.start - selected.start), -w.total(layout, p), w.start),
    )


def reduce(layout: LadderLayout, p: Distribution, verify: Optional[bool] = None) -> ReducedInstance:
    """
    Replace a solvable distribution on a ladder of n >= 5 rungs by a solvable
    one on n - 3 rungs with two fewer pebbles. Certificates are tried from
    cheapest to strongest, windows from the heaviest outwards.
    """
    layout.require_open()
    if layout.n < 5:
        raise GraphTooSmallError(f"window reduction needs n >= 5, got {layout.n}")
    if not is_solvable(layout.graph, p):
        raise InvalidParameterError(f"{list(p.counts)} is not solvable on ladder {layout.n}")
    verify = constants.verify_reductions if verify is None else verify

    windows = _window_order(layout, p)
    candidates = {w: ordered_candidates(layout, p, w) for w in windows}
    for certificate in Certificate:
        for window in windows:
            for candidate in candidates[window]:
                if not _certifies(certificate, layout, p, candidate):
                    continue
                if verify and certificate != Certificate.direct_solvability \
                        and not is_solvable(candidate.graph, candidate.distribution):
                    if certificate == Certificate.modified_inequalities:
                        raise LemmaViolationError(
                            f"modified inequalities accepted the unsolvable reduction "
                            f"{list(candidate.distribution.counts)} of {list(p.counts)}")
                    logger.warning(f"{certificate.value} accepted an unsolvable reduction "
                                   f"{list(candidate.distribution.counts)}; skipping")
                    continue
                logger.debug(f"reduced {list(p.counts)} via window {window.start} "
                             f"({certificate.value}, method {candidate.method})")
                return replace(candidate, certificate=certificate)
    raise ReductionFailedError(f"no certified reduction for {list(p.counts)}")
