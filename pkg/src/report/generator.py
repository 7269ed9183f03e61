"""Report generation for graphs, enumerations, complexes and witness families.

Every command first builds a plain structured dict (``build_*_report``) and then renders
it as text, markdown, JSON or YAML. All values in the dicts are strings, ints, bools,
lists or dicts, so the renderings are deterministic.
"""

import json
from enum import StrEnum

import yaml

from ..canon.codes import canonical_code
from ..config import reference_f_vector
from ..data.graph_file import serialize
from ..data.validator import Profile, validate
from ..graphs.ribbon import GraphKind, boundary_cycles, degree, face_degrees, rank, surface_type
from ..morse.attaching import attaching_structure, default_epsilon, epsilon_bound
from ..morse.critical import critical_structure, is_canonically_split
from ..morse.metric import MetricRibbonGraph, heights
from ..utils.converters import format_fraction, format_int_list


class ReportFormat(StrEnum):
    TEXT = "text"
    JSON = "json"
    YAML = "yaml"
    MARKDOWN = "markdown"


def _graph_of(value):
    return value.graph if isinstance(value, MetricRibbonGraph) else value


# ---------------------------------------------------------------------------
# Structured reports
# ---------------------------------------------------------------------------


def _critical_section(metric):
    graph = metric.graph
    height = heights(metric)
    structure = critical_structure(metric)
    section = {
        "heights": {str(v): format_fraction(height[v]) for v in graph.vertices},
        "critical_points": [
            {
                "point": p.label,
                "kind": str(p.kind),
                "height": format_fraction(p.height),
                "codimension": p.codimension,
                "downward": list(p.downward),
            }
            for p in structure.points
        ],
        "extended_branches": [
            {
                "from": structure.points[b.source].label,
                "edges": list(b.edges),
                "to": f"v{b.end}" if b.ends_at_critical else "basepoint",
            }
            for b in structure.branches
        ],
        "complexity": [structure.complexity, structure.extended_complexity],
        "codimension": structure.codimension,
        "canonically_split": is_canonically_split(metric),
        "epsilon_bound": format_fraction(epsilon_bound(metric)),
    }
    trivalent = all(graph.valence(v) >= 3 for v in graph.non_basepoint_vertices)
    if section["canonically_split"] and trivalent:
        attaching = attaching_structure(metric, default_epsilon(metric))
        section["attaching_dimension"] = attaching.dimension
        section["attaching_dimension_by_vertex"] = {
            str(v): attaching.dimension_at(v) for v in sorted({s.vertex for s in attaching.sets})
        }
        section["attaching_sets"] = [
            {"vertex": s.vertex, "members": list(s.members), "negative": s.negative, "positive": s.positive}
            for s in attaching.sets
        ]
    return section


def build_analysis_report(value):
    """Structured summary of one graph value, with the critical structure when it is metric.

    Args:
        value (RibbonGraph | PlainGraph | MetricRibbonGraph): graph to describe

    Returns:
        dict: report data
    """
    graph = _graph_of(value)
    profile = Profile.RIBBON_SPACE if graph.kind == GraphKind.RIBBON else Profile.AUTER_SPACE
    validity = validate(graph, profile)
    data = {
        "title": "Graph analysis",
        "kind": str(graph.kind),
        "vertices": graph.vertex_count,
        "edges": graph.edge_count,
        "basepoint": graph.basepoint,
        "rank": rank(graph),
        "degree": degree(graph),
    }
    if graph.kind == GraphKind.RIBBON:
        surface = surface_type(graph)
        data["genus"] = surface.genus
        data["punctures"] = surface.punctures
        data["boundary_cycles"] = [list(c.half_edges) for c in boundary_cycles(graph)]
        data["face_degrees"] = list(face_degrees(graph))
    data["valid"] = validity.is_valid
    data["rules"] = [{"rule": r.name, "passed": r.passed, "detail": r.detail} for r in validity.rules]
    data["canonical_code"] = str(canonical_code(graph))
    if isinstance(value, MetricRibbonGraph):
        data["lengths"] = {str(e): format_fraction(x) for e, x in zip(graph.edges, value.lengths, strict=True)}
        data["morse"] = _critical_section(value)
    return data


def build_enumeration_report(space, k, classes, roses_only=False, chirality=None):
    """Vertex classes of a degree complex, or only its roses.

    Args:
        space (GraphSpace): enumerated space
        k (int): maximal degree
        classes (dict[CanonicalCode, RibbonGraph]): representatives in code order
        roses_only (bool): the classes are the rose census
        chirality (dict | None): counts from ``chirality_census``

    Returns:
        dict: report data
    """
    by_degree = {}
    for graph in classes.values():
        by_degree[degree(graph)] = by_degree.get(degree(graph), 0) + 1
    data = {
        "title": "Rose census" if roses_only else "Vertex enumeration",
        "mode": str(space.mode),
        "params": list(space.params),
        "k": 0 if roses_only else k,
        "count": len(classes),
        "by_degree": {str(d): by_degree[d] for d in sorted(by_degree)},
        "classes": [
            {"code": str(code), "vertices": g.vertex_count, "edges": g.edge_count, "degree": degree(g)}
            for code, g in classes.items()
        ],
    }
    if chirality is not None:
        data["chirality"] = chirality
    return data


def build_complex_report(summary):
    """Complex summary in the published schema plus the reference f-vector when one exists."""
    reference = reference_f_vector(summary.space.mode, summary.space.params, summary.k)
    return {
        "title": "Quotient degree complex",
        "mode": str(summary.space.mode),
        "params": list(summary.space.params),
        "k": summary.k,
        "f_vector": list(summary.f_vector),
        "euler": summary.euler,
        "connected": summary.connected,
        "vertex_profile": [
            {"vertices": vertices, "degree": d, "count": count} for (vertices, d), count in summary.vertex_profile
        ],
        "reference_f_vector": list(reference) if reference is not None else None,
        "cells": [
            {"dim": c.dimension, "host_code": str(c.host), "flag": [list(f) for f in c.forests]} for c in summary.cells
        ],
    }


def build_witness_report(report):
    return {
        "title": "Rose witnesses",
        "genus": report.genus,
        "punctures": report.punctures,
        "expected": report.expected,
        "count": len(report.witnesses),
        "passed": report.passed,
        "checks": [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "witnesses": [
            {"alterations": w.name, "word": format_int_list(w.word), "code": str(canonical_code(w.graph))}
            for w in report.witnesses
        ],
    }


def build_graph_report(title, value, extra=None):
    """Resulting graph of a move, with its native serialization."""
    graph = _graph_of(value)
    data = {"title": title, **(extra or {})}
    data["degree"] = degree(graph)
    data["canonical_code"] = str(canonical_code(graph))
    data["graph"] = serialize(value)
    return data


def build_selfcheck_report(seed, samples, results):
    return {
        "title": "Self-check",
        "seed": seed,
        "samples": samples,
        "passed": all(r.passed for r in results),
        "checks": [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _label(key):
    return str(key).replace("_", "-")


def _scalar(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return " ".join(_scalar(v) if not isinstance(v, list) else "[" + _scalar(v) + "]" for v in value)
    return str(value)


def _text_lines(data, indent=0):
    pad = "  " * indent
    lines = []
    for key, value in data.items():
        if key == "title":
            continue
        if isinstance(value, dict):
            lines.append(f"{pad}{_label(key)}:")
            lines.extend(_text_lines(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{_label(key)}:")
            for item in value:
                lines.append(f"{pad}  - " + "  ".join(f"{_label(k)} {_scalar(v)}" for k, v in item.items()))
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{pad}{_label(key)}:")
            lines.extend(f"{pad}  {line}" for line in value.rstrip("\n").split("\n"))
        else:
            lines.append(f"{pad}{_label(key)}: {_scalar(value)}")
    return lines


def generate_text_report(data):
    lines = [data.get("title", "Report"), "=" * len(data.get("title", "Report"))]
    lines.extend(_text_lines(data))
    return "\n".join(lines) + "\n"


def _markdown_table(rows):
    headers = list(rows[0])
    lines = ["| " + " | ".join(_label(h) for h in headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_scalar(row.get(h)) for h in headers) + " |")
    return lines


def generate_markdown_report(data):
    """Markdown rendering: scalars as a bullet list, nested data as sections and tables."""
    report = [f"# {data.get('title', 'Report')}\n"]
    scalars = {k: v for k, v in data.items() if k != "title" and not isinstance(v, dict | list) and not _is_block(v)}
    for key, value in scalars.items():
        report.append(f"- **{_label(key)}**: {_scalar(value)}")
    for key, value in data.items():
        if key == "title" or key in scalars:
            continue
        report.append(f"\n## {_label(key)}\n")
        if _is_block(value):
            report.extend(["```", value.rstrip("\n"), "```"])
        elif isinstance(value, dict) and any(isinstance(v, dict | list) for v in value.values()):
            for sub, inner in value.items():
                if isinstance(inner, list) and inner and isinstance(inner[0], dict):
                    report.append(f"\n### {_label(sub)}\n")
                    report.extend(_markdown_table(inner))
                else:
                    report.append(f"- **{_label(sub)}**: {_inline(inner) if isinstance(inner, dict) else _scalar(inner)}")
        elif isinstance(value, dict):
            report.extend(f"- **{_label(k)}**: {_scalar(v)}" for k, v in value.items())
        elif value and isinstance(value[0], dict):
            report.extend(_markdown_table(value))
        else:
            report.append(_scalar(value) if value else "(none)")
    return "\n".join(report) + "\n"


def _inline(mapping):
    return ", ".join(f"{k}={_scalar(v)}" for k, v in mapping.items())


def _is_block(value):
    return isinstance(value, str) and "\n" in value


def generate_json_report(data):
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def generate_yaml_report(data):
    return yaml.safe_dump(data, default_flow_style=False, sort_keys=False, allow_unicode=True)


def render(data, report_format=ReportFormat.TEXT):
    """Render a structured report.

    Args:
        data (dict): output of one of the ``build_*_report`` functions
        report_format (ReportFormat | str): text, markdown, json or yaml

    Returns:
        str: rendered report ending in a newline
    """
    report_format = ReportFormat(report_format)
    if report_format == ReportFormat.JSON:
        return generate_json_report(data)
    if report_format == ReportFormat.YAML:
        return generate_yaml_report(data)
    if report_format == ReportFormat.MARKDOWN:
        return generate_markdown_report(data)
    return generate_text_report(data)
