from dataclasses import dataclass
from typing import Optional

import click

from db.results_cache import ResultsCache
from models.specs import DistributionSpec, GraphSpec
from rubbling.engine import Distribution
from rubbling.graphs import Graph
from utils.errors import InvalidParameterError
from utils.json import dumps


@dataclass
class Settings:
    json_output: bool = False
    cache_path: Optional[str] = None
    threads: int = 1

    @property
    def cache(self) -> Optional[ResultsCache]:
        return ResultsCache(self.cache_path) if self.cache_path else None


graph_option = click.option(
    "--graph", "graph_text", required=True,
    help='Shorthand (P5, C6, L5, PR5, M5) or JSON such as {"family": "prism", "n": 3}.')
dist_option = click.option(
    "--dist", "dist_text", required=True,
    help="Pebble counts as a JSON list, or {\"counts\": [...]}.")
k_option = click.option("--k", "k", type=int, default=1, show_default=True, help="Pebbles every vertex must reach.")


def load_graph(text: str) -> Graph:
    return GraphSpec.parse(text).to_graph()


def load_distribution(text: str, graph: Graph) -> Distribution:
    return DistributionSpec.parse(text).to_distribution(graph)


def parse_range(text: str) -> range:
    try:
        start, _, stop = text.partition("..")
        return range(int(start), int(stop) + 1)
    except ValueError:
        raise InvalidParameterError(f"range {text!r} must look like A..B")


def emit(settings: Settings, report, human: str):
    """Print the report as JSON with --json, else the human rendering."""
    if settings.json_output:
        click.echo(dumps(report, pretty=True))
    else:
        click.echo(human)
