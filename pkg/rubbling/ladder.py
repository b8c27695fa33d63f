from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Set, Tuple

from rubbling.engine import (
    Distribution,
    Move,
    MoveSequence,
    RubblingEngine,
    get_engine,
    independently_reachable,
    is_solvable,
    max_pebbles_to,
    max_pebbles_to_set,
)
from rubbling.graphs import Family, Graph, ladder
from utils.errors import InvalidLayoutError, InvalidParameterError


class Side(str, Enum):
    left = "left"
    right = "right"


UPPER, LOWER = 0, 1


@dataclass(frozen=True)
class LadderLayout:
    """
    Rung view of a ladder, prism or Mobius ladder. Rung i (0-based) holds the
    upper vertex 2i and the lower vertex 2i+1.
    """
    graph: Graph

    @classmethod
    def of(cls, graph: Graph) -> "LadderLayout":
        if graph.family not in (Family.ladder, Family.prism, Family.mobius) or graph.n is None:
            raise InvalidLayoutError(f"{graph.family.value} graphs have no rung layout")
        return cls(graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def is_open(self) -> bool:
        return self.graph.family == Family.ladder

    def require_open(self) -> "LadderLayout":
        if not self.is_open:
            raise InvalidLayoutError(f"left and right are undefined on a {self.graph.family.value}")
        return self

    def check_rung(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise InvalidParameterError(f"rung {i} is not in [0, {self.n})")
        return i

    @staticmethod
    def upper(i: int) -> int:
        return 2 * i

    @staticmethod
    def lower(i: int) -> int:
        return 2 * i + 1

    def rung(self, i: int) -> Tuple[int, int]:
        self.check_rung(i)
        return 2 * i, 2 * i + 1

    @staticmethod
    def rung_of(v: int) -> int:
        return v // 2

    @staticmethod
    def row_of(v: int) -> int:
        return v % 2

    @staticmethod
    def partner(v: int) -> int:
        return v ^ 1

    def rung_total(self, p: Distribution, i: int) -> int:
        return p.total(self.rung(i))

    def side_vertices(self, v: int, side: Side) -> List[int]:
        """Vertices not right (resp. left) of v, including its rung partner."""
        self.require_open()
        i = self.rung_of(self.graph.check_vertex(v))
        rungs = range(0, i + 1) if side == Side.left else range(i, self.n)
        return [x for r in rungs for x in (2 * r, 2 * r + 1)]

    def truncated(self, i: int, side: Side) -> Tuple["LadderLayout", int]:
        """
        Sub-ladder of the rungs <= i (left) or >= i (right) with the vertex
        offset that maps its indices back into this ladder.
        """
        self.require_open().check_rung(i)
        if side == Side.left:
            return LadderLayout(ladder(i + 1)), 0
        return LadderLayout(ladder(self.n - i)), 2 * i

    def restrict(self, p: Distribution, i: int, side: Side) -> Tuple["LadderLayout", Distribution, int]:
        sub, offset = self.truncated(i, side)
        counts = p.check_graph(self.graph).counts[offset:offset + sub.graph.vertex_count]
        return sub, Distribution(counts), offset


@dataclass(frozen=True)
class WindowLabels:
    """Rungs A, l, x, r, B of a three-rung window with its two boundary rungs."""
    a: int
    l: int
    x: int
    r: int
    b: int

    @classmethod
    def from_start(cls, s: int) -> "WindowLabels":
        return cls(s - 1, s, s + 1, s + 2, s + 3)

    def __post_init__(self):
        if not self.a + 1 == self.l == self.x - 1 == self.r - 2 == self.b - 3:
            raise InvalidParameterError(f"window rungs {self} are not consecutive")

    @property
    def start(self) -> int:
        return self.l

    @property
    def rungs(self) -> Tuple[int, int, int]:
        return self.l, self.x, self.r

    def total(self, layout: LadderLayout, p: Distribution) -> int:
        return sum(layout.rung_total(p, i) for i in self.rungs)

    def to_dict(self) -> Dict:
        return {"A": self.a, "l": self.l, "x": self.x, "r": self.r, "B": self.b}


@dataclass(frozen=True)
class SideReach:
    left: int
    right: int

    def to_dict(self) -> Dict:
        return {"L": self.left, "R": self.right}


def _weight(graph: Graph, p: Distribution, v: int, vertices: Iterable[int]) -> Fraction:
    p.check_graph(graph)
    row = graph.distances[v]
    members = list(vertices)
    depth = int(max(row[x] for x in members))
    numerator = sum(p[x] << (depth - int(row[x])) for x in members)
    return Fraction(numerator, 1 << depth)


def weight(graph: Graph, p: Distribution, v: int) -> Fraction:
    """Sum of p(x) / 2^d(x, v) over every vertex."""
    v = graph.check_vertex(v)
    return _weight(graph, p, v, range(graph.vertex_count))


def left_weight(layout: LadderLayout, p: Distribution, v: int) -> Fraction:
    return _weight(layout.graph, p, v, layout.side_vertices(v, Side.left))


def right_weight(layout: LadderLayout, p: Distribution, v: int) -> Fraction:
    return _weight(layout.graph, p, v, layout.side_vertices(v, Side.right))


def side_reach(layout: LadderLayout, p: Distribution, v: int) -> SideReach:
    """Pebbles obtainable at v using only moves on one side of its rung."""
    i = layout.rung_of(layout.graph.check_vertex(v))
    values = []
    for side in (Side.left, Side.right):
        sub, counts, offset = layout.restrict(p, i, side)
        values.append(max_pebbles_to(sub.graph, counts, v - offset, witness=False).max_pebbles)
    return SideReach(*values)


def check_floor_exactness(layout: LadderLayout, p: Distribution, v: int) -> bool:
    reach = side_reach(layout, p, v)
    return (reach.left == math.floor(left_weight(layout, p, v))
            and reach.right == math.floor(right_weight(layout, p, v)))


def greedy_rubbling(layout: LadderLayout, p: Distribution, v: int, side: Side) -> MoveSequence:
    """
    Level-by-level sweep towards v. Vertices at distance d pass their pebbles
    to the side vertex at distance d-1 they share as a common neighbour.
    """
    graph = layout.graph
    allowed = set(layout.side_vertices(v, side))
    row = graph.distances[v]
    levels: Dict[int, List[int]] = defaultdict(list)
    for x in sorted(allowed):
        levels[int(row[x])].append(x)

    counts = list(p.check_graph(graph).counts)
    moves: List[Move] = []

    def push(move: Move):
        a, b = move.consumed
        counts[a] -= 1
        counts[b] -= 1
        counts[move.target] += 1
        moves.append(move)

    for d in sorted(levels, reverse=True):
        if d == 0:
            continue
        level = levels[d]
        assert len(level) <= 2, f"level {d} of {side.value} side has {level}"
        closer = [u for u in graph.adjacency[level[0]] if u in allowed and row[u] == d - 1]
        if len(level) == 2:
            closer = [u for u in closer if graph.has_edge(u, level[1])]
        # on a tie prefer the upper row
        receiver = min(closer, key=lambda u: (layout.row_of(u), u))
        for x in level:
            while counts[x] >= 2:
                push(Move.pebbling(x, receiver))
        if len(level) == 2 and counts[level[0]] >= 1 and counts[level[1]] >= 1:
            push(Move.strict(level[0], level[1], receiver))
    return MoveSequence(tuple(moves))


def _exported(move: Move, boundary: Set[int]) -> Optional[int]:
    if move.target in boundary:
        return None
    for source in move.sources:
        if source in boundary:
            return source
    return None


def is_a_biased(seq: Iterable[Move], layout: LadderLayout, a: int) -> bool:
    """
    True when at most one vertex of rung a ever sends pebbles out of the rung.
    """
    boundary = set(layout.rung(a))
    exporters = {_exported(move, boundary) for move in seq} - {None}
    return len(exporters) <= 1


@lru_cache(maxsize=256)
def _biased_engine(graph: Graph, a: int, exporter: int) -> RubblingEngine:
    """Engine whose only exports out of rung a leave from exporter."""
    boundary = {2 * a, 2 * a + 1}
    return RubblingEngine(graph, allowed=lambda move: _exported(move, boundary) in (None, exporter))


def _biased_engines(layout: LadderLayout, a: int) -> List[RubblingEngine]:
    return [_biased_engine(layout.graph, a, exporter) for exporter in layout.rung(a)]


def find_a_biased_sequence(layout: LadderLayout, p: Distribution, v: int, a: int) -> Optional[MoveSequence]:
    layout.require_open().check_rung(a)
    v = layout.graph.check_vertex(v)
    if layout.rung_of(v) >= a:
        raise InvalidParameterError(f"vertex {v} is not left of rung {a}")
    state = p.check_graph(layout.graph).counts
    for engine in _biased_engines(layout, a):
        if engine.profile(state)[v] >= 1:
            return engine.witness_to(state, v, 1)
    return None


def a_biased_reachable_set(layout: LadderLayout, p: Distribution, a: int) -> Set[int]:
    """Vertices left of rung a that some A-biased sequence puts a pebble on."""
    layout.require_open().check_rung(a)
    state = p.check_graph(layout.graph).counts
    profiles = [engine.profile(state) for engine in _biased_engines(layout, a)]
    return {v for v in range(2 * a) if any(profile[v] >= 1 for profile in profiles)}


def a_biased_exceptions(layout: LadderLayout, p: Distribution, a: int) -> List[int]:
    """Reachable vertices left of rung a without any A-biased witness."""
    biased = a_biased_reachable_set(layout, p, a)
    profile = get_engine(layout.graph).profile(p.counts)
    return [v for v in range(2 * a) if profile[v] >= 1 and v not in biased]


def p_dependent(layout: LadderLayout, p: Distribution, l: int, r: int) -> bool:
    """
    l is right-reachable and r is left-reachable, yet no single sequence puts
    pebbles on both. Arguments may come in either order.
    """
    layout.require_open()
    graph = layout.graph
    l, r = graph.check_vertex(l), graph.check_vertex(r)
    if layout.rung_of(l) == layout.rung_of(r):
        raise InvalidParameterError("p-dependence needs vertices on different rungs")
    if layout.rung_of(l) > layout.rung_of(r):
        l, r = r, l
    if side_reach(layout, p, l).right < 1 or side_reach(layout, p, r).left < 1:
        return False
    return not independently_reachable(graph, p, l, r)


def window_sums(layout: LadderLayout, p: Distribution) -> List[int]:
    """Pebble totals of every run of three consecutive rungs."""
    layout.require_open()
    if layout.n < 3:
        return [p.check_graph(layout.graph).size]
    return [sum(layout.rung_total(p, i) for i in range(s, s + 3)) for s in range(layout.n - 2)]


def window_sum_bound_check(layout: LadderLayout, p: Distribution, a: int) -> bool:
    """
    With every window holding at most 3 pebbles, rung a gathers at most 3
    pebbles from the left, and exactly 3 only when it already holds them.
    """
    layout.require_open().check_rung(a)
    sums = window_sums(layout, p)
    if max(sums) > 3:
        raise InvalidParameterError(f"window sums {sums} exceed 3")
    sub, counts, _ = layout.restrict(p, a, Side.left)
    gathered = max_pebbles_to_set(sub.graph, counts, sub.rung(a))
    return gathered <= 3 and (gathered < 3 or layout.rung_total(p, a) == 3)


def two_pebble_window_violations(layout: LadderLayout, p: Distribution) -> List[str]:
    """
    For distributions whose windows all hold at most 2 pebbles: such a
    distribution is unsolvable when some window holds fewer, and a rung can
    gather 2 pebbles exactly when it holds 2. Returns the broken claims.
    """
    sums = window_sums(layout, p)
    if max(sums) > 2:
        raise InvalidParameterError(f"window sums {sums} exceed 2")
    problems = []
    if min(sums) < 2 and is_solvable(layout.graph, p):
        problems.append(f"solvable although a window holds {min(sums)} pebbles")
    for i in range(layout.n):
        gathered = max_pebbles_to_set(layout.graph, p, layout.rung(i))
        if (gathered >= 2) != (layout.rung_total(p, i) == 2):
            problems.append(f"rung {i} gathers {gathered} while holding {layout.rung_total(p, i)}")
    return problems
