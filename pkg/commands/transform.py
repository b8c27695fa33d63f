import json

import click

from commands.common import Settings, dist_option, emit, graph_option, load_distribution, load_graph
from models.reports import ReductionReport, TransformReport
from rubbling.ladder import LadderLayout
from rubbling.reduction import BOUNDARY_ROLES, check_inequalities, reduce as reduce_window
from rubbling.transforms import collapse as collapse_blocks, collapse_rungs, collapse_summary, smooth_fully, smoothing_move
from utils.errors import InvalidParameterError


@click.command()
@graph_option
@dist_option
@click.option("--verify/--no-verify", "verify", default=None,
              help="Confirm the reduced distribution with the engine (default from RUBBLING_VERIFY_REDUCTIONS).")
@click.pass_obj
def reduce(settings: Settings, graph_text, dist_text, verify):
    """Delete a three-rung window of a ladder and redistribute its pebbles."""
    graph = load_graph(graph_text)
    layout = LadderLayout.of(graph)
    p = load_distribution(dist_text, graph)
    result = reduce_window(layout, p, verify=verify)
    inequalities = check_inequalities(layout, p, result)
    data = result.to_dict()
    report = ReductionReport(
        original=list(p.counts),
        reduced=data["distribution"],
        n=layout.n,
        reduced_n=result.layout.n,
        window=data["window"],
        placement=data["placement"],
        reflections=data["reflections"],
        method=result.method,
        certificate=data["certificate"],
        modified_deltas={role: str(d) for role, d in zip(BOUNDARY_ROLES, inequalities.modified)},
        original_deltas=dict(zip(BOUNDARY_ROLES, inequalities.original)),
    )
    emit(settings, report,
         f"ladder {layout.n} -> ladder {result.layout.n}: {list(result.distribution.counts)} "
         f"(window at rung {result.window.start}, {data['certificate']}, method {result.method or '-'})")
    return 0


@click.command()
@graph_option
@dist_option
@click.option("--blocks", default=None, help="JSON list of vertex blocks; defaults to the rungs of a ladder or prism.")
@click.pass_obj
def collapse(settings: Settings, graph_text, dist_text, blocks):
    """Contract connected vertex blocks and sum their pebbles."""
    graph = load_graph(graph_text)
    p = load_distribution(dist_text, graph)
    if blocks is None:
        result = collapse_rungs(LadderLayout.of(graph))
    else:
        try:
            parsed = json.loads(blocks)
        except json.JSONDecodeError as e:
            raise InvalidParameterError(f"blocks {blocks!r} is not JSON: {e.msg}")
        result = collapse_blocks(graph, parsed)
    q = result.distribution(p)
    summary = collapse_summary(result)
    report = TransformReport(operation="collapse", graph=graph.descriptor(), before=list(p.counts),
                             after=list(q.counts), result_graph={"vertices": summary["vertices"],
                                                                 "edges": summary["edges"]},
                             mapping=summary["mapping"])
    emit(settings, report, f"{list(q.counts)} on {summary['vertices']} vertices, edges {summary['edges']}")
    return 0


@click.command()
@graph_option
@dist_option
@click.option("--vertex", type=int, default=None, help="Smooth this vertex once instead of smoothing fully.")
@click.pass_obj
def smooth(settings: Settings, graph_text, dist_text, vertex):
    """Apply smoothing moves at degree-2 vertices holding at least 3 pebbles."""
    graph = load_graph(graph_text)
    p = load_distribution(dist_text, graph)
    q = smooth_fully(graph, p) if vertex is None else smoothing_move(graph, p, vertex)
    report = TransformReport(operation="smooth", graph=graph.descriptor(), before=list(p.counts), after=list(q.counts))
    emit(settings, report, str(list(q.counts)))
    return 0
