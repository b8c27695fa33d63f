from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from rubbling.graphs import Graph, SymmetryGroup
from utils.errors import InvalidMoveError, InvalidParameterError, MoveNotExecutableError
from utils.logger import logger


State = Tuple[int, ...]


@dataclass(frozen=True)
class Distribution:
    """Pebble counts indexed by vertex."""
    counts: Tuple[int, ...]
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise InvalidParameterError(f"negative pebble count in {counts}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "size", sum(counts))

    @classmethod
    def empty(cls, vertex_count: int) -> "Distribution":
        return cls((0,) * vertex_count)

    @classmethod
    def single(cls, vertex_count: int, vertex: int, pebbles: int) -> "Distribution":
        counts = [0] * vertex_count
        counts[vertex] = pebbles
        return cls(tuple(counts))

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def __len__(self) -> int:
        return len(self.counts)

    def total(self, vertices: Iterable[int]) -> int:
        return sum(self.counts[v] for v in vertices)

    def permuted(self, perm: Sequence[int]) -> "Distribution":
        return Distribution(SymmetryGroup.permute(self.counts, tuple(perm)))

    def canonical(self, group: SymmetryGroup) -> "Distribution":
        return Distribution(group.canonical(self.counts))

    def with_added(self, vertex: int, pebbles: int) -> "Distribution":
        counts = list(self.counts)
        counts[vertex] += pebbles
        return Distribution(tuple(counts))

    def check_graph(self, graph: Graph) -> "Distribution":
        if len(self.counts) != graph.vertex_count:
            raise InvalidParameterError(
                f"distribution has {len(self.counts)} entries, graph has {graph.vertex_count} vertices")
        return self

    def to_dict(self) -> Dict:
        return {"counts": list(self.counts), "size": self.size}


class MoveKind(str, Enum):
    pebbling = "pebbling"
    strict_rubbling = "strict_rubbling"


@dataclass(frozen=True)
class Move:
    """
    A pebbling move takes two pebbles from sources[0]; a strict rubbling move
    takes one pebble from each of its two sources. Either adds one pebble at target.
    """
    kind: MoveKind
    sources: Tuple[int, ...]
    target: int

    @classmethod
    def pebbling(cls, source: int, target: int) -> "Move":
        return cls(MoveKind.pebbling, (source,), target)

    @classmethod
    def strict(cls, v: int, w: int, target: int) -> "Move":
        return cls(MoveKind.strict_rubbling, (min(v, w), max(v, w)), target)

    @property
    def consumed(self) -> Tuple[int, int]:
        if self.kind == MoveKind.pebbling:
            return self.sources[0], self.sources[0]
        return self.sources[0], self.sources[1]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(self.sources) + (self.target,)

    def validate(self, graph: Graph) -> "Move":
        for v in self.vertices:
            graph.check_vertex(v)
        if self.kind == MoveKind.pebbling:
            if len(self.sources) != 1 or not graph.has_edge(self.sources[0], self.target):
                raise InvalidMoveError(f"{self} is not a pebbling move along an edge")
        else:
            if len(self.sources) != 2 or self.sources[0] == self.sources[1]:
                raise InvalidMoveError(f"{self} needs two distinct sources")
            if not all(graph.has_edge(s, self.target) for s in self.sources):
                raise InvalidMoveError(f"{self}: target is not a common neighbour of its sources")
        return self

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "sources": list(self.sources), "target": self.target}

    def __str__(self) -> str:
        a, b = self.consumed
        return f"({a},{b}->{self.target})"


@dataclass(frozen=True)
class MoveSequence:
    moves: Tuple[Move, ...] = ()

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def to_dict(self) -> Dict:
        return {"moves": [m.to_dict() for m in self.moves]}

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.moves) or "(empty)"


@dataclass(frozen=True)
class ReachResult:
    max_pebbles: int
    witness: Optional[MoveSequence] = None

    def to_dict(self) -> Dict:
        return {
            "max_pebbles": self.max_pebbles,
            "witness": self.witness.to_dict()["moves"] if self.witness is not None else None,
        }


def _apply(state: State, a: int, b: int, target: int) -> State:
    counts = list(state)
    counts[a] -= 1
    counts[b] -= 1
    counts[target] += 1
    return tuple(counts)


class RubblingEngine:
    """
    Exact rubbling oracle for one graph.

    Every move removes one pebble, so the states reachable from a distribution
    form a finite DAG. For each state the engine memoizes the per-vertex maximum
    obtainable over that DAG; every query for this graph shares the memo.
    """

    def __init__(self, graph: Graph, memoize: bool = True,
                 allowed: Optional[Callable[[Move], bool]] = None):
        self.graph = graph
        self.memoize = memoize
        self._profiles: Dict[State, State] = {}
        table: List[Tuple[int, int, int, Move]] = []
        for target in range(graph.vertex_count):
            neighbours = graph.adjacency[target]
            for source in neighbours:
                table.append((source, source, target, Move.pebbling(source, target)))
            for i, v in enumerate(neighbours):
                for w in neighbours[i + 1:]:
                    table.append((v, w, target, Move.strict(v, w, target)))
        # a restricted engine only ever plays the moves passing allowed
        if allowed is not None:
            table = [entry for entry in table if allowed(entry[3])]
        self.moves = tuple(table)

    @property
    def memo_size(self) -> int:
        return len(self._profiles)

    def successors(self, state: State) -> Iterator[Tuple[Move, State]]:
        for a, b, target, move in self.moves:
            if a == b:
                if state[a] < 2:
                    continue
            elif state[a] < 1 or state[b] < 1:
                continue
            yield move, _apply(state, a, b, target)

    def profile(self, state: State) -> State:
        """Maximum pebbles each vertex can hold after some executable sequence from state."""
        if self.memoize:
            return self._memo_profile(state)
        return self._plain_profile(state)

    def _memo_profile(self, state: State) -> State:
        cached = self._profiles.get(state)
        if cached is not None:
            return cached
        best = list(state)
        for _, successor in self.successors(state):
            sub = self._memo_profile(successor)
            for v, value in enumerate(sub):
                if value > best[v]:
                    best[v] = value
        result = tuple(best)
        self._profiles[state] = result
        return result

    def _plain_profile(self, state: State) -> State:
        best = list(state)
        for _, successor in self.successors(state):
            for v, value in enumerate(self._plain_profile(successor)):
                if value > best[v]:
                    best[v] = value
        return tuple(best)

    def witness_to(self, state: State, target: int, goal: int) -> MoveSequence:
        moves = []
        while state[target] < goal:
            for move, successor in self.successors(state):
                if self.profile(successor)[target] >= goal:
                    moves.append(move)
                    state = successor
                    break
            else:
                raise AssertionError(f"no successor keeps {goal} pebbles reachable at {target}")
        return MoveSequence(tuple(moves))

    def search(self, state: State, accept: Callable[[State], bool],
               prune: Optional[Callable[[State], bool]] = None,
               allowed: Optional[Callable[[Move], bool]] = None) -> Optional[MoveSequence]:
        """
        Depth-first search of the closure of state for a state passing accept.
        Returns the sequence reaching it, or None.
        """
        seen = {state}
        stack: List[Tuple[State, Tuple[Move, ...]]] = [(state, ())]
        while stack:
            current, path = stack.pop()
            if accept(current):
                return MoveSequence(path)
            for move, successor in self.successors(current):
                if successor in seen:
                    continue
                if allowed is not None and not allowed(move):
                    continue
                seen.add(successor)
                if prune is not None and prune(successor):
                    continue
                stack.append((successor, path + (move,)))
        return None


@lru_cache(maxsize=64)
def get_engine(graph: Graph) -> RubblingEngine:
    logger.debug(f"new rubbling engine for {graph.descriptor()}")
    return RubblingEngine(graph)


def _state(graph: Graph, p: Distribution) -> State:
    return p.check_graph(graph).counts


def apply_move(graph: Graph, p: Distribution, move: Move) -> Distribution:
    move.validate(graph)
    a, b = move.consumed
    counts = list(_state(graph, p))
    counts[a] -= 1
    counts[b] -= 1
    if counts[a] < 0 or counts[b] < 0:
        raise MoveNotExecutableError(f"{move} is not executable under {list(p.counts)}")
    counts[move.target] += 1
    return Distribution(tuple(counts))


def replay(graph: Graph, p: Distribution, moves: Iterable[Move]) -> Distribution:
    for move in moves:
        p = apply_move(graph, p, move)
    return p


def is_executable(graph: Graph, p: Distribution, moves: Iterable[Move]) -> bool:
    try:
        replay(graph, p, moves)
    except MoveNotExecutableError:
        return False
    return True


def reach_profile(graph: Graph, p: Distribution) -> State:
    return get_engine(graph).profile(_state(graph, p))


def max_pebbles_to(graph: Graph, p: Distribution, target: int, witness: bool = True) -> ReachResult:
    target = graph.check_vertex(target)
    engine = get_engine(graph)
    state = _state(graph, p)
    best = engine.profile(state)[target]
    sequence = engine.witness_to(state, target, best) if witness else None
    return ReachResult(best, sequence)


def is_k_reachable(graph: Graph, p: Distribution, target: int, k: int) -> bool:
    if k < 0:
        raise InvalidParameterError(f"k must be nonnegative, got {k}")
    target = graph.check_vertex(target)
    if k == 0:
        return True
    if k > p.size:
        return False
    return reach_profile(graph, p)[target] >= k


def is_reachable(graph: Graph, p: Distribution, target: int) -> bool:
    return is_k_reachable(graph, p, target, 1)


def is_k_solvable(graph: Graph, p: Distribution, k: int) -> bool:
    if k < 0:
        raise InvalidParameterError(f"k must be nonnegative, got {k}")
    _state(graph, p)
    if k == 0:
        return True
    if p.size < k:
        return False
    return min(reach_profile(graph, p)) >= k


def is_solvable(graph: Graph, p: Distribution) -> bool:
    return is_k_solvable(graph, p, 1)


def independent_witness(graph: Graph, p: Distribution, u: int, v: int) -> Optional[MoveSequence]:
    """Sequence after which u and v both hold a pebble, or None."""
    u, v = graph.check_vertex(u), graph.check_vertex(v)
    if u == v:
        raise InvalidParameterError(f"independent reachability needs two distinct vertices, got {u} twice")
    engine = get_engine(graph)
    return engine.search(
        _state(graph, p),
        accept=lambda s: s[u] >= 1 and s[v] >= 1,
        prune=lambda s: min(engine.profile(s)[u], engine.profile(s)[v]) < 1,
    )


def independently_reachable(graph: Graph, p: Distribution, u: int, v: int) -> bool:
    return independent_witness(graph, p, u, v) is not None


def max_pebbles_to_set(graph: Graph, p: Distribution, vertices: Iterable[int]) -> int:
    """Maximum total held on the vertex set after any executable sequence."""
    members = sorted({graph.check_vertex(v) for v in vertices})
    if not members:
        raise InvalidParameterError("vertex set must be nonempty")
    engine = get_engine(graph)
    start = _state(graph, p)
    best = sum(start[v] for v in members)
    seen = {start}
    stack = [start]
    while stack:
        current = stack.pop()
        held = sum(current[v] for v in members)
        best = max(best, held)
        for _, successor in engine.successors(current):
            if successor in seen:
                continue
            seen.add(successor)
            bound = engine.profile(successor)
            if sum(bound[v] for v in members) <= best:
                continue
            stack.append(successor)
    return best
