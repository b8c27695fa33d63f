import click

from commands.common import Settings, dist_option, emit, graph_option, k_option, load_distribution, load_graph
from models.reports import ReachReport, SolveReport
from models.specs import MoveModel
from rubbling.engine import max_pebbles_to, reach_profile


@click.command()
@graph_option
@dist_option
@click.option("--target", type=int, required=True, help="Vertex to collect pebbles on.")
@click.option("--witness/--no-witness", default=True, help="Include a move sequence achieving the maximum.")
@click.pass_obj
def reach(settings: Settings, graph_text, dist_text, target, witness):
    """Maximum number of pebbles that can be moved to TARGET."""
    graph = load_graph(graph_text)
    p = load_distribution(dist_text, graph)
    result = max_pebbles_to(graph, p, target, witness=witness)
    moves = None
    if result.witness is not None:
        moves = [MoveModel.from_move(m) for m in result.witness]
    report = ReachReport(graph=graph.descriptor(), distribution=list(p.counts), target=target,
                         max_pebbles=result.max_pebbles, witness=moves)
    human = str(result.max_pebbles)
    if result.witness is not None and len(result.witness):
        human += f"\nwitness: {result.witness}"
    emit(settings, report, human)
    return 0


@click.command()
@graph_option
@dist_option
@k_option
@click.pass_obj
def solve(settings: Settings, graph_text, dist_text, k):
    """Per-vertex verdicts: can every vertex collect K pebbles?"""
    graph = load_graph(graph_text)
    p = load_distribution(dist_text, graph)
    profile = reach_profile(graph, p)
    failing = [v for v, best in enumerate(profile) if best < k]
    report = SolveReport(graph=graph.descriptor(), distribution=list(p.counts), k=k,
                         solvable=not failing, reach=list(profile), failing=failing)
    lines = [f"{v}: {best} {'ok' if best >= k else 'FAIL'}" for v, best in enumerate(profile)]
    lines.append(f"{k}-solvable" if not failing else f"not {k}-solvable")
    emit(settings, report, "\n".join(lines))
    return 0
