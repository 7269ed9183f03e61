"""Command-line interface."""

import argparse
import logging
import random
import sys
from pathlib import Path

from .complexes.enumeration import GraphSpace, chirality_census, enumerate_roses, enumerate_vertices
from .complexes.properties import run_property_checks
from .complexes.quotient import build_quotient_complex
from .complexes.witnesses import verify_rose_witnesses
from .config import DEFAULT_LIMITS, reference_f_vector
from .data.graph_file import parse_graph_file
from .errors import RibbonComplexError, UsageError
from .graphs.moves import ArcPartition, collapse_forest, expand, new_edge
from .graphs.ribbon import GraphKind
from .morse.attaching import created_edges, default_epsilon, slide_branch
from .morse.critical import canonical_split_with_forest
from .morse.metric import MetricRibbonGraph, collapse_metric
from .pdf.generator import export_report_pdf
from .report.generator import (
    ReportFormat,
    build_analysis_report,
    build_complex_report,
    build_enumeration_report,
    build_graph_report,
    build_selfcheck_report,
    build_witness_report,
    render,
)
from .utils.converters import format_fraction, format_int_list, parse_fraction, parse_int_list

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Reports bad arguments as usage errors instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class VerificationFailed(Exception):
    """Raised by a command whose report is printed but whose check failed."""


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _read_graph(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_graph_file(text)


def cmd_analyze(args):
    return build_analysis_report(_read_graph(args.file))


def cmd_enumerate(args):
    space = GraphSpace.ribbon(args.genus, args.punctures)
    if args.roses_only:
        classes = enumerate_roses(args.genus, args.punctures)
    else:
        classes = enumerate_vertices(space, args.max_degree, jobs=args.jobs)
    chirality = None
    if args.chirality:
        chirality = chirality_census(classes if args.roses_only else enumerate_roses(args.genus, args.punctures))
    return build_enumeration_report(space, args.max_degree, classes, roses_only=args.roses_only, chirality=chirality)


def _verify_counts(summary, data, err):
    reference = reference_f_vector(summary.space.mode, summary.space.params, summary.k)
    if reference is None:
        print(f"Warning: no reference f-vector on record for {summary.space} k={summary.k}", file=err)
        return
    if tuple(reference) == tuple(summary.f_vector):
        return
    print(
        f"Warning: f-vector {format_int_list(summary.f_vector)} differs from reference "
        f"{format_int_list(reference)} for {summary.space} k={summary.k}",
        file=err,
    )
    for (vertices, d), count in summary.vertex_profile:
        print(f"vertex-profile vertices={vertices} degree={d} : {count}", file=err)
    by_host = {}
    for cell in summary.cells:
        counts = by_host.setdefault(str(cell.host), [0] * len(summary.f_vector))
        counts[cell.dimension] += 1
    for host, counts in sorted(by_host.items()):
        print(f"orbit-cells {host} : {format_int_list(counts)}", file=err)
    raise VerificationFailed(data)


def cmd_complex(args):
    space = GraphSpace.ribbon(args.genus, args.punctures)
    summary = build_quotient_complex(space, args.max_degree, jobs=args.jobs)
    data = build_complex_report(summary)
    if args.verify:
        _verify_counts(summary, data, args.err)
    return data


def cmd_auter(args):
    space = GraphSpace.plain(args.rank)
    summary = build_quotient_complex(space, args.max_degree, jobs=args.jobs)
    data = build_complex_report(summary)
    if args.verify:
        _verify_counts(summary, data, args.err)
    return data


def cmd_witnesses(args):
    report = verify_rose_witnesses(args.genus, args.punctures)
    data = build_witness_report(report)
    if not report.passed:
        raise VerificationFailed(data)
    return data


def cmd_split(args):
    metric = _read_graph(args.file)
    if not isinstance(metric, MetricRibbonGraph):
        raise UsageError("split needs edge lengths on every edge")
    split, forest = canonical_split_with_forest(metric)
    return build_graph_report("Canonical split", split, {"contracted_edges": sorted(forest)})


def cmd_collapse(args):
    value = _read_graph(args.file)
    edges = parse_int_list(args.edges)
    if isinstance(value, MetricRibbonGraph):
        result = collapse_metric(value, edges)
    else:
        result = collapse_forest(value, edges)
    return build_graph_report("Forest collapse", result, {"forest": sorted(edges)})


def cmd_expand(args):
    value = _read_graph(args.file)
    graph = value.graph if isinstance(value, MetricRibbonGraph) else value
    arc = parse_int_list(args.arc)
    rotation = graph.rotation(args.vertex)
    stays = tuple(h for h in rotation if h not in arc)
    if graph.kind == GraphKind.PLAIN:
        arc = sorted(arc)
    part = ArcPartition(args.vertex, stays, tuple(arc))
    expanded = expand(graph, part)
    if isinstance(value, MetricRibbonGraph):
        if args.length is None:
            raise UsageError("expanding a metric graph needs --length for the new edge")
        lengths = dict(zip(graph.edges, value.lengths, strict=True))
        lengths[new_edge(graph)] = parse_fraction(args.length)
        expanded = MetricRibbonGraph(expanded, tuple(lengths[e] for e in expanded.edges))
    return build_graph_report("Expansion", expanded, {"new_edge": new_edge(graph)})


def cmd_slide(args):
    metric = _read_graph(args.file)
    if not isinstance(metric, MetricRibbonGraph):
        raise UsageError("slide needs edge lengths on every edge")
    epsilon = parse_fraction(args.epsilon) if args.epsilon else default_epsilon(metric)
    slid = slide_branch(metric, args.branch, parse_fraction(args.target), epsilon)
    created = sorted(created_edges(metric, slid))
    extra = {
        "epsilon": format_fraction(epsilon),
        "created_edges": created,
        "collapses_back": collapse_forest(slid.graph, created) == metric.graph,
    }
    return build_graph_report("Branch slide", slid, extra)


def cmd_selfcheck(args):
    space = GraphSpace.plain(args.rank) if args.rank else GraphSpace.ribbon(args.genus, args.punctures)
    rng = random.Random(args.seed)  # noqa: S311
    results = run_property_checks(space, args.max_degree, rng, args.samples, limits=DEFAULT_LIMITS)
    data = build_selfcheck_report(args.seed, args.samples, results)
    if not data["passed"]:
        raise VerificationFailed(data)
    return data


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value, help="Output format"
    )
    common.add_argument("--jobs", type=int, default=1, help="Worker processes for enumeration (default: 1)")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized commands (default: 0)")
    common.add_argument("--verify", action="store_true", help="Compare counts with the reference table")
    common.add_argument("--pdf", metavar="PATH", help="Also export the report as PDF")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail")
    return common


def build_parser():
    common = _common_options()
    parser = _Parser(prog="ribbon-complex", description="Degree complexes of basepointed ribbon graphs and graphs.")
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = subparsers.add_parser("analyze", parents=[common], help="Describe a graph file")
    p.add_argument("file", help="Graph file, '-' for stdin")
    p.set_defaults(handler=cmd_analyze)

    p = subparsers.add_parser("enumerate", parents=[common], help="Vertex classes of a ribbon degree complex")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=0)
    p.add_argument("--roses-only", action="store_true", help="Only the rose census")
    p.add_argument("--chirality", action="store_true", help="Also count roses isomorphic to their mirror")
    p.set_defaults(handler=cmd_enumerate)

    p = subparsers.add_parser("complex", parents=[common], help="Quotient ribbon degree complex")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(handler=cmd_complex)

    p = subparsers.add_parser("auter", parents=[common], help="Quotient degree complex of plain graphs")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(handler=cmd_auter)

    p = subparsers.add_parser(
        "witnesses", aliases=["prop5"], parents=[common], help="Generate and check distinct roses of a type"
    )
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.set_defaults(handler=cmd_witnesses)

    p = subparsers.add_parser("split", parents=[common], help="Canonically split a metric graph")
    p.add_argument("file")
    p.set_defaults(handler=cmd_split)

    p = subparsers.add_parser("collapse", parents=[common], help="Collapse a forest")
    p.add_argument("file")
    p.add_argument("--edges", required=True, help="Comma-separated edge ids")
    p.set_defaults(handler=cmd_collapse)

    p = subparsers.add_parser("expand", parents=[common], help="Split a vertex along an arc")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--arc", required=True, help="Half-edges moving to the new vertex")
    p.add_argument("--length", help="Length p/q of the new edge for metric graphs")
    p.set_defaults(handler=cmd_expand)

    p = subparsers.add_parser("slide", parents=[common], help="Slide a branch into its epsilon cone")
    p.add_argument("file")
    p.add_argument("--branch", type=int, required=True, help="Upward half-edge of the branch")
    p.add_argument("--target", required=True, help="Signed target p/q")
    p.add_argument("--epsilon", help="Cone radius r/s (default: half the legal bound)")
    p.set_defaults(handler=cmd_slide)

    p = subparsers.add_parser("selfcheck", parents=[common], help="Randomized invariant checks")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--punctures", type=int, default=2)
    p.add_argument("--rank", type=int, help="Check plain graphs of this rank instead")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(handler=cmd_selfcheck)
    return parser


def _configure_logging(verbosity, err):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=err, format="%(levelname)s %(name)s: %(message)s")


def _emit(data, args, out):
    out.write(render(data, args.format))
    if args.pdf:
        export_report_pdf(data, args.pdf)


def run(argv=None, out=None, err=None):
    """Run one command.

    Args:
        argv (list[str] | None): arguments without the program name
        out (TextIO | None): report stream, stdout by default
        err (TextIO | None): diagnostics stream, stderr by default

    Returns:
        int: 0 success, 1 invalid input, 2 verification failure, 3 capacity exceeded
    """
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required; see --help")
        if args.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {args.jobs}")
        args.err = err
        _configure_logging(args.verbose, err)
        _emit(args.handler(args), args, out)
    except VerificationFailed as failed:
        _emit(failed.args[0], args, out)
        return 2
    except RibbonComplexError as e:
        print(f"error[{e.kind}]: {e}", file=err)
        return e.exit_code
    except OSError as e:
        print(f"error[io]: {e}", file=err)
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
