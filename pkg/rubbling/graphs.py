from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from utils.errors import InvalidParameterError


Permutation = Tuple[int, ...]


class Family(str, Enum):
    path = "path"
    cycle = "cycle"
    ladder = "ladder"
    prism = "prism"
    mobius = "mobius"
    product = "product"
    custom = "custom"


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple connected graph on the vertices 0..vertex_count-1.

    Edges are stored as sorted pairs. Derived data (adjacency, distance
    matrix, the networkx view) is computed lazily and cached on the instance.
    """
    vertex_count: int
    edges: frozenset
    family: Family = Family.custom
    n: Optional[int] = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidParameterError("a graph needs at least one vertex")
        for edge in self.edges:
            a, b = edge
            if a == b:
                raise InvalidParameterError(f"self-loop at vertex {a}")
            if a > b:
                raise InvalidParameterError(f"edge {edge} is not normalized")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise InvalidParameterError(f"edge {edge} leaves the vertex range")
        if not nx.is_connected(self.nx_graph):
            raise InvalidParameterError("graph is not connected")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]],
                   family: Family = Family.custom, n: Optional[int] = None) -> "Graph":
        normalized = set()
        for edge in edges:
            if len(edge) != 2:
                raise InvalidParameterError(f"edge {edge} must have two endpoints")
            a, b = int(edge[0]), int(edge[1])
            pair = (min(a, b), max(a, b))
            if pair in normalized:
                raise InvalidParameterError(f"duplicate edge {pair}")
            normalized.add(pair)
        return cls(vertex_count, frozenset(normalized), family, n)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        neighbours: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            neighbours[a].append(b)
            neighbours[b].append(a)
        return tuple(tuple(sorted(row)) for row in neighbours)

    @cached_property
    def distances(self) -> np.ndarray:
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for source, lengths in nx.all_pairs_shortest_path_length(self.nx_graph):
            for target, length in lengths.items():
                matrix[source, target] = length
        matrix.setflags(write=False)
        return matrix

    @property
    def diameter(self) -> int:
        return int(self.distances.max())

    def degree(self, v: int) -> int:
        return len(self.adjacency[self.check_vertex(v)])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise InvalidParameterError(f"vertex {v} is not in [0, {self.vertex_count})")
        return int(v)

    def descriptor(self) -> str:
        """Stable key used by the results cache."""
        if self.family not in (Family.custom, Family.product) and self.n is not None:
            return f"{self.family.value}:{self.n}"
        digest = hashlib.sha1(repr(sorted(self.edges)).encode()).hexdigest()[:12]
        return f"{self.family.value}:{self.vertex_count}:{digest}"

    def to_dict(self) -> Dict:
        if self.family not in (Family.custom, Family.product) and self.n is not None:
            return {"family": self.family.value, "n": self.n}
        return {"vertices": self.vertex_count, "edges": [list(edge) for edge in sorted(self.edges)]}


@dataclass(frozen=True)
class SymmetryGroup:
    """
    A group of vertex permutations given by generators. A permutation maps
    vertex v to perm[v]. Pruning only needs a subgroup of the automorphism
    group, so families report the symmetries they know about.
    """
    vertex_count: int
    generators: Tuple[Permutation, ...] = ()

    @cached_property
    def elements(self) -> Tuple[Permutation, ...]:
        identity = tuple(range(self.vertex_count))
        seen = {identity}
        frontier = [identity]
        while frontier:
            current = frontier.pop()
            for generator in self.generators:
                composed = tuple(generator[current[v]] for v in range(self.vertex_count))
                if composed not in seen:
                    seen.add(composed)
                    frontier.append(composed)
        return tuple(sorted(seen))

    @property
    def order(self) -> int:
        return len(self.elements)

    @staticmethod
    def permute(counts: Sequence[int], perm: Permutation) -> Tuple[int, ...]:
        image = [0] * len(counts)
        for v, c in enumerate(counts):
            image[perm[v]] = c
        return tuple(image)

    def orbit(self, counts: Sequence[int]) -> List[Tuple[int, ...]]:
        return sorted({self.permute(counts, perm) for perm in self.elements})

    def canonical(self, counts: Sequence[int]) -> Tuple[int, ...]:
        return min(self.permute(counts, perm) for perm in self.elements)


def is_automorphism(graph: Graph, perm: Permutation) -> bool:
    if sorted(perm) != list(range(graph.vertex_count)):
        return False
    image = {(min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in graph.edges}
    return image == graph.edges


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"P_n needs n >= 1, got {n}")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)), Family.path, n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"C_n needs n >= 3, got {n}")
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    return Graph(n, frozenset(edges), Family.cycle, n)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """
    G □ H with vertex (a, b) linearized row-major as a * |V(H)| + b.
    """
    if g.vertex_count < 1 or h.vertex_count < 1:
        raise InvalidParameterError("cartesian product of an empty graph")
    width = h.vertex_count
    edges = set()
    for a in range(g.vertex_count):
        for b, b2 in h.edges:
            edges.add((a * width + b, a * width + b2))
    for a, a2 in g.edges:
        for b in range(width):
            edges.add((a * width + b, a2 * width + b))
    return Graph(g.vertex_count * width, frozenset(edges), Family.product, None)


def _retag(graph: Graph, family: Family, n: int) -> Graph:
    return Graph(graph.vertex_count, graph.edges, family, n)


def ladder(n: int) -> Graph:
    """P_n □ P_2. Rung i holds the upper vertex 2i and the lower vertex 2i+1."""
    if n < 1:
        raise InvalidParameterError(f"ladder needs n >= 1, got {n}")
    return _retag(cartesian_product(path_graph(n), path_graph(2)), Family.ladder, n)


def prism(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"prism needs n >= 3, got {n}")
    return _retag(cartesian_product(cycle_graph(n), path_graph(2)), Family.prism, n)


def mobius_ladder(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"Mobius ladder needs n >= 3, got {n}")
    last = n - 1
    edges = set(ladder(n).edges)
    # switched closing edges: v_1 w_n and w_1 v_n
    edges.add((0, 2 * last + 1))
    edges.add((1, 2 * last))
    return Graph(2 * n, frozenset(edges), Family.mobius, n)


def distance(g: Graph, u: int, v: int) -> int:
    return int(g.distances[g.check_vertex(u), g.check_vertex(v)])


def _rung_perm(n: int, rung_map, swap_rows: bool) -> Permutation:
    perm = [0] * (2 * n)
    for i in range(n):
        for row in (0, 1):
            new_row = 1 - row if swap_rows else row
            perm[2 * i + row] = 2 * rung_map(i) + new_row
    return tuple(perm)


def family_symmetries(g: Graph) -> SymmetryGroup:
    n = g.n
    count = g.vertex_count
    if g.family == Family.path and count > 1:
        return SymmetryGroup(count, (tuple(count - 1 - i for i in range(count)),))
    if g.family == Family.cycle:
        rotation = tuple((i + 1) % n for i in range(n))
        reflection = tuple((-i) % n for i in range(n))
        return SymmetryGroup(count, (rotation, reflection))
    if g.family == Family.ladder:
        horizontal = _rung_perm(n, lambda i: n - 1 - i, False)
        vertical = _rung_perm(n, lambda i: i, True)
        return SymmetryGroup(count, (horizontal, vertical))
    if g.family == Family.prism:
        rotation = _rung_perm(n, lambda i: (i + 1) % n, False)
        reflection = _rung_perm(n, lambda i: (-i) % n, False)
        vertical = _rung_perm(n, lambda i: i, True)
        return SymmetryGroup(count, (rotation, reflection, vertical))
    if g.family == Family.mobius:
        # dihedral group of the C_2n running v_1..v_n w_1..w_n; rungs are its antipodal chords
        size = 2 * n
        vertex_at = [2 * pos if pos < n else 2 * (pos - n) + 1 for pos in range(size)]
        position = {vertex: pos for pos, vertex in enumerate(vertex_at)}

        def from_positions(pos_map) -> Permutation:
            return tuple(vertex_at[pos_map(position[v])] for v in range(size))

        rotation = from_positions(lambda pos: (pos + 1) % size)
        reflection = from_positions(lambda pos: (-pos) % size)
        return SymmetryGroup(count, (rotation, reflection))
    return SymmetryGroup(count, ())


def to_dot(g: Graph, counts: Optional[Sequence[int]] = None, name: str = "G") -> str:
    """
    Render the graph in DOT. With counts, every vertex label carries its pebble count.
    """
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        label = f"{v}" if counts is None else f"{v}: {counts[v]}"
        style = ', style=filled, fillcolor="lightgrey"' if counts is not None and counts[v] > 0 else ""
        lines.append(f'  {v} [label="{label}"{style}];')
    for a, b in sorted(g.edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines)
