from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from rubbling.engine import Distribution
from rubbling.graphs import Graph
from rubbling.ladder import LadderLayout
from utils.errors import InvalidParameterError, InvalidSmoothingError


def smoothing_move(graph: Graph, p: Distribution, v: int) -> Distribution:
    """Take two pebbles off a degree-2 vertex holding at least 3 and give one to each neighbour."""
    v = graph.check_vertex(v)
    p.check_graph(graph)
    if graph.degree(v) != 2:
        raise InvalidSmoothingError(f"vertex {v} has degree {graph.degree(v)}")
    if p[v] < 3:
        raise InvalidSmoothingError(f"vertex {v} holds only {p[v]} pebbles")
    u, w = graph.adjacency[v]
    counts = list(p.counts)
    counts[v] -= 2
    counts[u] += 1
    counts[w] += 1
    return Distribution(tuple(counts))


def smoothing_candidates(graph: Graph, p: Distribution) -> List[int]:
    return [v for v in range(graph.vertex_count) if graph.degree(v) == 2 and p[v] >= 3]


def smooth_fully(graph: Graph, p: Distribution) -> Distribution:
    """
    Smooth the lowest eligible vertex until none is left. The size never
    changes; a distribution that returns to an earlier state never settles
    and raises InvalidSmoothingError.
    """
    p.check_graph(graph)
    seen = {p.counts}
    while True:
        candidates = smoothing_candidates(graph, p)
        if not candidates:
            return p
        p = smoothing_move(graph, p, candidates[0])
        if p.counts in seen:
            raise InvalidSmoothingError(f"smoothing {list(p.counts)} does not settle")
        seen.add(p.counts)


def is_smooth(graph: Graph, p: Distribution) -> bool:
    return not smoothing_candidates(graph, p)


@dataclass(frozen=True)
class Collapse:
    graph: Graph
    mapping: Tuple[int, ...]

    @property
    def block_count(self) -> int:
        return self.graph.vertex_count

    def distribution(self, p: Distribution) -> Distribution:
        return collapse_distribution(p, self.mapping, self.block_count)


def collapse(graph: Graph, blocks: Sequence[Sequence[int]]) -> Collapse:
    """
    Contract each connected block to a single vertex. Block i becomes vertex i;
    edges between blocks merge and edges inside a block disappear.
    """
    mapping: List[Optional[int]] = [None] * graph.vertex_count
    for index, block in enumerate(blocks):
        members = [graph.check_vertex(v) for v in block]
        if not members:
            raise InvalidParameterError(f"block {index} is empty")
        for v in members:
            if mapping[v] is not None:
                raise InvalidParameterError(f"vertex {v} lies in blocks {mapping[v]} and {index}")
            mapping[v] = index
        if not nx.is_connected(graph.nx_graph.subgraph(members)):
            raise InvalidParameterError(f"block {index} does not induce a connected subgraph")
    missing = [v for v, b in enumerate(mapping) if b is None]
    if missing:
        raise InvalidParameterError(f"vertices {missing} are in no block")
    edges = {(min(mapping[a], mapping[b]), max(mapping[a], mapping[b]))
             for a, b in graph.edges if mapping[a] != mapping[b]}
    return Collapse(Graph(len(blocks), frozenset(edges)), tuple(mapping))


def collapse_rungs(layout: LadderLayout) -> Collapse:
    """Prism or ladder with every rung contracted: C_n or P_n."""
    return collapse(layout.graph, [layout.rung(i) for i in range(layout.n)])


def collapse_distribution(p: Distribution, mapping: Sequence[int], block_count: int) -> Distribution:
    counts = [0] * block_count
    for v, c in enumerate(p.counts):
        counts[mapping[v]] += c
    return Distribution(tuple(counts))


def collapse_summary(result: Collapse) -> Dict:
    return {
        "vertices": result.graph.vertex_count,
        "edges": [list(e) for e in sorted(result.graph.edges)],
        "mapping": list(result.mapping),
    }
