import click

from commands.common import Settings, emit, graph_option, k_option, load_graph, parse_range
from models.reports import SearchReport, WitnessReport
from rubbling.graphs import to_dot
from rubbling.search import all_optimal_witnesses, k_optimal_rubbling_number
from rubbling.theorems import FormulaFamily, verify_family
from utils.logger import logger


@click.command()
@graph_option
@k_option
@click.option("--progress", is_flag=True, help="Show a progress bar per size.")
@click.pass_obj
def optimal(settings: Settings, graph_text, k, progress):
    """Smallest distribution size letting every vertex collect K pebbles."""
    graph = load_graph(graph_text)
    result = k_optimal_rubbling_number(graph, k, threads=settings.threads, cache=settings.cache, progress=progress)
    report = SearchReport(**result.to_dict())
    emit(settings, report,
         f"{graph.descriptor()}: {result.value} (witness {list(result.witness.counts)}, "
         f"{result.tested_count} tested, {result.elapsed:.2f}s)")
    return 0


@click.command()
@graph_option
@k_option
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot", show_default=True)
@click.option("--all", "every", is_flag=True, help="Emit every canonical optimal distribution.")
@click.pass_obj
def witness(settings: Settings, graph_text, k, fmt, every):
    """Optimal distributions as DOT graphs or JSON."""
    graph = load_graph(graph_text)
    if every:
        witnesses = all_optimal_witnesses(graph, k)
        value = witnesses[0].size
    else:
        result = k_optimal_rubbling_number(graph, k, threads=settings.threads, cache=settings.cache)
        witnesses, value = [result.witness], result.value
    if fmt == "json" or settings.json_output:
        report = WitnessReport(graph=graph.descriptor(), k=k, value=value,
                               witnesses=[list(p.counts) for p in witnesses])
        emit(Settings(json_output=True), report, "")
    else:
        click.echo("\n\n".join(to_dot(graph, p.counts, name=f"W{i}") for i, p in enumerate(witnesses)))
    return 0


@click.command()
@click.option("--family", type=click.Choice([f.value for f in FormulaFamily]), required=True)
@click.option("--range", "n_range", required=True, help="Inclusive range of n, for example 2..6.")
@click.option("--budget", type=float, default=None, help="Seconds before remaining rows are left incomplete.")
@click.pass_obj
def verify(settings: Settings, family, n_range, budget):
    """Compare closed-form values with exhaustive search."""
    report = verify_family(family, parse_range(n_range), budget_seconds=budget,
                           cache=settings.cache, threads=settings.threads)
    emit(settings, report, report.to_markdown())
    if report.mismatches:
        return 2
    if not report.complete:
        logger.warning(f"verification of {family} stopped at the time budget")
    return 0
