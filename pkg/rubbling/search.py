from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

import constants
from rubbling.engine import Distribution, get_engine, is_k_solvable
from rubbling.graphs import Family, Graph, SymmetryGroup, family_symmetries
from rubbling.transforms import smooth_fully
from utils.errors import BudgetExceededError, InvalidParameterError, InvalidSmoothingError
from utils.logger import logger


@dataclass(frozen=True)
class SearchResult:
    graph: Graph
    k: int
    value: int
    witness: Distribution
    tested_count: int
    elapsed: float

    def to_dict(self) -> Dict:
        return {
            "graph": self.graph.descriptor(),
            "k": self.k,
            "value": self.value,
            "witness": list(self.witness.counts),
            "tested_count": self.tested_count,
            "elapsed": round(self.elapsed, 6),
        }

    @classmethod
    def from_dict(cls, graph: Graph, data: Dict) -> "SearchResult":
        return cls(graph, data["k"], data["value"], Distribution(tuple(data["witness"])),
                   data["tested_count"], data["elapsed"])


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Every way to write total as parts nonnegative summands, in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_distributions(graph: Graph, size: int,
                            symmetries: Optional[SymmetryGroup] = None) -> Iterator[Distribution]:
    """Canonical distributions of the given size, lexicographically ascending."""
    if size < 0:
        raise InvalidParameterError(f"size must be nonnegative, got {size}")
    group = symmetries if symmetries is not None else family_symmetries(graph)
    for counts in compositions(size, graph.vertex_count):
        if group.canonical(counts) == counts:
            yield Distribution(counts)


def _flags(graph: Graph, k: int, chunk: Sequence[Tuple[int, ...]]) -> List[bool]:
    return [is_k_solvable(graph, Distribution(counts), k) for counts in chunk]


def _first_parallel(graph: Graph, k: int, candidates: List[Tuple[int, ...]], threads: int) -> Optional[int]:
    """Index of the first solvable candidate; chunks keep the stream order."""
    if not candidates:
        return None
    step = max(1, len(candidates) // (threads * 4))
    chunks = [candidates[i:i + step] for i in range(0, len(candidates), step)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        offset = 0
        for chunk, flags in zip(chunks, pool.map(_flags, [graph] * len(chunks), [k] * len(chunks), chunks)):
            for index, flag in enumerate(flags):
                if flag:
                    return offset + index
            offset += len(chunk)
    return None


def uses_smoothing(graph: Graph, k: int, smoothing: Optional[bool]) -> bool:
    if smoothing is None:
        return graph.family == Family.cycle and k <= 2
    if smoothing and k > 2:
        logger.warning(f"smoothing rejection only preserves reachability for k <= 2; ignoring it for k={k}")
        return False
    return smoothing


def _smoothed_form(graph: Graph, group: SymmetryGroup, p: Distribution) -> Optional[Tuple[int, ...]]:
    try:
        return group.canonical(smooth_fully(graph, p).counts)
    except InvalidSmoothingError:
        return None


def k_optimal_rubbling_number(graph: Graph, k: int = 1, threads: Optional[int] = None,
                              smoothing: Optional[bool] = None, deadline: Optional[float] = None,
                              cache=None, progress: bool = False) -> SearchResult:
    """
    Smallest m such that some distribution of m pebbles lets every vertex
    collect k pebbles, with the lexicographically first canonical witness.
    """
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}")
    if cache is not None:
        hit = cache.get_result(graph, k)
        if hit is not None:
            logger.debug(f"results cache hit for {graph.descriptor()} k={k}")
            return SearchResult.from_dict(graph, hit)

    threads = constants.default_threads if threads is None else threads
    smoothing = uses_smoothing(graph, k, smoothing)
    group = family_symmetries(graph)
    started = time.perf_counter()
    tested = 0
    failed: Set[Tuple[int, ...]] = set()
    size = k
    # the reachability of a vertex is bounded by its weight, so this always terminates
    while True:
        logger.debug(f"testing {graph.descriptor()} with {size} pebbles (k={k})")
        stream = enumerate_distributions(graph, size, group)
        if progress:
            stream = tqdm(stream, desc=f"{graph.descriptor()} m={size}", leave=False)
        witness = None
        if threads > 1:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceededError(f"search on {graph.descriptor()} ran out of time at m={size}")
            candidates = [p.counts for p in stream]
            index = _first_parallel(graph, k, candidates, threads)
            tested += len(candidates) if index is None else index + 1
            if index is not None:
                witness = Distribution(candidates[index])
        else:
            for p in stream:
                if deadline is not None and time.monotonic() > deadline:
                    raise BudgetExceededError(f"search on {graph.descriptor()} ran out of time at m={size}")
                if smoothing:
                    smoothed = _smoothed_form(graph, group, p)
                    if smoothed is not None and smoothed != p.counts and smoothed in failed:
                        continue
                tested += 1
                if is_k_solvable(graph, p, k):
                    witness = p
                    break
                failed.add(p.counts)
        if witness is not None:
            break
        size += 1

    result = SearchResult(graph, k, size, witness, tested, time.perf_counter() - started)
    logger.info(f"{graph.descriptor()}: {k}-optimal rubbling number {size} "
                f"({tested} tested, {get_engine(graph).memo_size} states memoized)")
    if cache is not None:
        cache.put_result(graph, k, result.to_dict())
    return result


def optimal_rubbling_number(graph: Graph, **kwargs) -> SearchResult:
    return k_optimal_rubbling_number(graph, 1, **kwargs)


def all_optimal_witnesses(graph: Graph, k: int = 1) -> List[Distribution]:
    """Every canonical k-solvable distribution of the optimal size."""
    value = k_optimal_rubbling_number(graph, k, threads=1).value
    return [p for p in enumerate_distributions(graph, value) if is_k_solvable(graph, p, k)]
