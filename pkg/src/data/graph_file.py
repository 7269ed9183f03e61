"""Reading and writing graph files.

Native format, one directive per line, ``#`` starts a comment::

    ribbon-graph 1
    halfedges 6
    vertex 0 : 0 2 4
    vertex 1 : 1 5 3
    edge 0 1 len 1/2
    edge 2 3 len 1/4
    edge 4 5 len 1/4
    basepoint 0

``plain-graph 1`` replaces the header for plain graphs. Vertex lines list the rotation
counterclockwise. Lengths are optional but must then be given on every edge; a
``normalized`` line marks lengths that sum to 1. A JSON rendering of the same data is
accepted as well.
"""

import json
import re
from dataclasses import dataclass, field

from ..config import FILE_FORMAT_VERSION
from ..errors import GraphFileError, UsageError
from ..graphs.ribbon import GraphKind, RibbonGraph, from_rotations
from ..morse.metric import MetricRibbonGraph
from ..utils.converters import format_fraction, parse_fraction

HEADERS = {"ribbon-graph": GraphKind.RIBBON, "plain-graph": GraphKind.PLAIN}
_TOKEN = re.compile(r"\S+")


@dataclass
class GraphFile:
    """Parsed directives of a native file, before the graph value is built."""

    kind: GraphKind
    version: int
    half_edges: int = 0
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    basepoint: str | None = None
    normalized: bool = False


def _tokens(line):
    """Tokens of a line with their 1-based columns, comment stripped."""
    text = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(text)]


def _int(token, line):
    text, col = token
    try:
        return int(text)
    except ValueError:
        raise GraphFileError(f"expected an integer, got {text!r}", line, col) from None


def _half_edge(token, line, size):
    h = _int(token, line)
    if not 0 <= h < size:
        raise GraphFileError(f"half-edge {h} is outside 0..{size - 1}", line, token[1])
    return h


def _read_header(lines):
    for number, line in enumerate(lines, 1):
        tokens = _tokens(line)
        if not tokens:
            continue
        name, col = tokens[0]
        if name not in HEADERS:
            raise GraphFileError(f"unknown header {name!r}; expected 'ribbon-graph 1' or 'plain-graph 1'", number, col)
        if len(tokens) != 2:
            raise GraphFileError("header takes exactly one version number", number, col)
        version = _int(tokens[1], number)
        if version != FILE_FORMAT_VERSION:
            raise GraphFileError(f"unsupported format version {version}", number, tokens[1][1])
        return GraphFile(HEADERS[name], version), number
    raise GraphFileError("unknown header: file is empty", 1, 1)


def read_graph_file(text):
    """Parse native text into a GraphFile, checking every half-edge is placed exactly once.

    Args:
        text (str): file contents

    Returns:
        GraphFile
    """
    lines = text.splitlines()
    parsed, start = _read_header(lines)
    seen_vertex = {}
    seen_edge = {}
    vertex_ids = set()

    for number in range(start + 1, len(lines) + 1):
        tokens = _tokens(lines[number - 1])
        if not tokens:
            continue
        directive, col = tokens[0]
        args = tokens[1:]
        if directive == "halfedges":
            if parsed.half_edges:
                raise GraphFileError("duplicate halfedges line", number, col)
            if len(args) != 1:
                raise GraphFileError("halfedges takes one count", number, col)
            size = _int(args[0], number)
            if size <= 0 or size % 2:
                raise GraphFileError(f"half-edge count must be positive and even, got {size}", number, args[0][1])
            parsed.half_edges = size
        elif directive in ("vertex", "edge") and not parsed.half_edges:
            raise GraphFileError(f"{directive} line before the halfedges line", number, col)
        elif directive == "vertex":
            if len(args) < 3 or args[1][0] != ":":
                raise GraphFileError("expected 'vertex <id> : h h ...'", number, col)
            vid = args[0][0]
            if vid in vertex_ids:
                raise GraphFileError(f"duplicate vertex id {vid!r}", number, args[0][1])
            vertex_ids.add(vid)
            rotation = []
            for token in args[2:]:
                h = _half_edge(token, number, parsed.half_edges)
                if h in seen_vertex:
                    raise GraphFileError(f"half-edge {h} already listed at line {seen_vertex[h]}", number, token[1])
                seen_vertex[h] = number
                rotation.append(h)
            parsed.vertices.append((vid, tuple(rotation)))
        elif directive == "edge":
            if len(args) not in (2, 4) or (len(args) == 4 and args[2][0] != "len"):
                raise GraphFileError("expected 'edge h h' or 'edge h h len p/q'", number, col)
            a = _half_edge(args[0], number, parsed.half_edges)
            b = _half_edge(args[1], number, parsed.half_edges)
            if a == b:
                raise GraphFileError(f"half-edge {a} is paired with itself", number, args[1][1])
            for h, token in ((a, args[0]), (b, args[1])):
                if h in seen_edge:
                    raise GraphFileError(f"half-edge {h} already paired at line {seen_edge[h]}", number, token[1])
                seen_edge[h] = number
            length = None
            if len(args) == 4:
                try:
                    length = parse_fraction(args[3][0])
                except UsageError as e:
                    raise GraphFileError(str(e), number, args[3][1]) from None
                if length <= 0:
                    raise GraphFileError(f"edge length must be positive, got {format_fraction(length)}", number, args[3][1])
            parsed.edges.append((a, b, length, number))
        elif directive == "basepoint":
            if parsed.basepoint is not None:
                raise GraphFileError("duplicate basepoint line", number, col)
            if len(args) != 1:
                raise GraphFileError("basepoint takes one vertex id", number, col)
            parsed.basepoint = args[0][0]
            basepoint_at = (number, args[0][1])
        elif directive == "normalized":
            parsed.normalized = True
        else:
            raise GraphFileError(f"unknown directive {directive!r}", number, col)

    end = max(len(lines), 1)
    if not parsed.half_edges:
        raise GraphFileError("missing halfedges line", end, 1)
    for name, seen in (("vertex", seen_vertex), ("edge", seen_edge)):
        missing = [h for h in range(parsed.half_edges) if h not in seen]
        if missing:
            raise GraphFileError(f"half-edge {missing[0]} is missing from the {name} lines", end, 1)
    if parsed.basepoint is None:
        raise GraphFileError("missing basepoint line", end, 1)
    if parsed.basepoint not in vertex_ids:
        raise GraphFileError(f"basepoint {parsed.basepoint!r} is not a vertex id", *basepoint_at)
    with_length = [e for e in parsed.edges if e[2] is not None]
    if with_length and len(with_length) != len(parsed.edges):
        line = next(e[3] for e in parsed.edges if e[2] is None)
        raise GraphFileError("lengths must be given on every edge or on none", line, 1)
    if with_length and parsed.kind == GraphKind.PLAIN:
        raise GraphFileError("edge lengths are only supported on ribbon graphs", with_length[0][3], 1)
    return parsed


def _build(parsed):
    ids = [vid for vid, _ in parsed.vertices]
    rotations = [rotation for _, rotation in parsed.vertices]
    pairs = [(a, b) for a, b, _, _ in parsed.edges]
    graph = from_rotations(rotations, pairs, ids.index(parsed.basepoint), plain=parsed.kind == GraphKind.PLAIN)
    if not parsed.edges or parsed.edges[0][2] is None:
        return graph
    by_edge = {min(a, b): length for a, b, length, _ in parsed.edges}
    return MetricRibbonGraph(graph, tuple(by_edge[e] for e in graph.edges), parsed.normalized)


def _from_json(text):
    try:
        data = json.loads(text)
        kind = HEADERS[data["format"]]
        if data.get("version") != FILE_FORMAT_VERSION:
            raise GraphFileError(f"unsupported format version {data.get('version')}")
        rotations = [tuple(v["rotation"]) for v in data["vertices"]]
        pairs = [tuple(e["halves"]) for e in data["edges"]]
        base_index = next(i for i, v in enumerate(data["vertices"]) if v["id"] == data["basepoint"])
        graph = from_rotations(rotations, pairs, base_index, plain=kind == GraphKind.PLAIN)
        lengths = [e.get("length") for e in data["edges"]]
    except json.JSONDecodeError as e:
        raise GraphFileError(e.msg, e.lineno, e.colno) from None
    except (KeyError, TypeError, StopIteration) as e:
        raise GraphFileError(f"malformed JSON graph: {e!r}") from None
    if all(x is None for x in lengths):
        return graph
    if any(x is None for x in lengths):
        raise GraphFileError("lengths must be given on every edge or on none")
    by_edge = {min(e["halves"]): parse_fraction(str(e["length"])) for e in data["edges"]}
    if any(x <= 0 for x in by_edge.values()):
        raise GraphFileError("edge lengths must be positive")
    return MetricRibbonGraph(graph, tuple(by_edge[e] for e in graph.edges), bool(data.get("normalized", False)))


def parse_graph_file(text):
    """Parse a graph file into a graph value.

    Args:
        text (str): native or JSON file contents

    Returns:
        RibbonGraph | PlainGraph | MetricRibbonGraph: metric when the edges carry lengths
    """
    if text.lstrip().startswith("{"):
        return _from_json(text)
    return _build(read_graph_file(text))


def _split(value):
    if isinstance(value, MetricRibbonGraph):
        return value.graph, dict(zip(value.graph.edges, value.lengths, strict=True)), value.normalized
    if isinstance(value, RibbonGraph):
        return value, None, False
    raise UsageError(f"cannot serialize {type(value).__name__}")


def serialize(value, format="native"):
    """Deterministic text for a graph value.

    Args:
        value (RibbonGraph | PlainGraph | MetricRibbonGraph): graph to write
        format (str): 'native' or 'json'

    Returns:
        str: vertex lines by vertex id, edge lines by edge id
    """
    graph, lengths, normalized = _split(value)
    header = "plain-graph" if graph.kind == GraphKind.PLAIN else "ribbon-graph"
    if format == "json":
        data = {
            "format": header,
            "version": FILE_FORMAT_VERSION,
            "half_edges": graph.half_edge_count,
            "basepoint": graph.basepoint,
            "vertices": [{"id": v, "rotation": list(graph.rotation(v))} for v in graph.vertices],
            "edges": [],
        }
        for e in graph.edges:
            item = {"id": e, "halves": [e, graph.alpha[e]]}
            if lengths is not None:
                item["length"] = format_fraction(lengths[e])
            data["edges"].append(item)
        if normalized:
            data["normalized"] = True
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if format != "native":
        raise UsageError(f"unknown graph format {format!r}")

    lines = [f"{header} {FILE_FORMAT_VERSION}", f"halfedges {graph.half_edge_count}"]
    for v in graph.vertices:
        lines.append(f"vertex {v} : " + " ".join(str(h) for h in graph.rotation(v)))
    for e in graph.edges:
        suffix = f" len {format_fraction(lengths[e])}" if lengths is not None else ""
        lines.append(f"edge {e} {graph.alpha[e]}{suffix}")
    lines.append(f"basepoint {graph.basepoint}")
    if normalized:
        lines.append("normalized")
    return "\n".join(lines) + "\n"
