"""Metric ribbon graphs and their height functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from ..errors import PreconditionError, StructuralError
from ..graphs.moves import Forest, collapse_forest_with_labels
from ..graphs.ribbon import RibbonGraph


@dataclass(frozen=True)
class MetricRibbonGraph:
    """A ribbon graph with an exact positive length on every edge.

    ``lengths[i]`` belongs to ``graph.edges[i]``.
    """

    graph: RibbonGraph
    lengths: tuple[Fraction, ...]
    normalized: bool = False

    def __post_init__(self):
        lengths = tuple(Fraction(x) for x in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        if len(lengths) != self.graph.edge_count:
            raise StructuralError(f"{len(lengths)} lengths given for {self.graph.edge_count} edges")
        for e, x in zip(self.graph.edges, lengths, strict=True):
            if x <= 0:
                raise StructuralError(f"edge {e} has non-positive length {x}")
        if self.normalized and sum(lengths) != 1:
            raise StructuralError(f"normalized lengths sum to {sum(lengths)}, not 1")

    def length(self, edge):
        return self.lengths[self.graph.edges.index(edge)]

    @property
    def total_length(self):
        return sum(self.lengths, Fraction(0))


@dataclass(frozen=True)
class GraphPoint:
    """Point on ``edge`` at ``offset`` from the vertex of half-edge ``edge``."""

    edge: int
    offset: Fraction


def normalize(lengths):
    total = sum(lengths, Fraction(0))
    return tuple(x / total for x in lengths)


def with_lengths(graph, lengths, normalized=False):
    """MetricRibbonGraph from a mapping or sequence of lengths, rescaled when ``normalized``."""
    if isinstance(lengths, dict):
        lengths = [lengths[e] for e in graph.edges]
    lengths = tuple(Fraction(x) for x in lengths)
    if normalized:
        lengths = normalize(lengths)
    return MetricRibbonGraph(graph, lengths, normalized)


def random_metric(graph, rng, normalized=True, denominator=12):
    """Random rational lengths ``k / denominator`` with ``1 <= k <= denominator``."""
    lengths = [Fraction(rng.randint(1, denominator), denominator) for _ in graph.edges]
    return with_lengths(graph, lengths, normalized)


def collapse_metric(metric, forest):
    """Collapse ``forest``; surviving edges keep their lengths, renormalized only if flagged."""
    forest = Forest(forest)
    graph, labels = collapse_forest_with_labels(metric.graph, forest) if forest else (metric.graph, None)
    if labels is None:
        return metric
    by_new_edge = {labels[e]: x for e, x in zip(metric.graph.edges, metric.lengths, strict=True) if e not in forest}
    lengths = tuple(by_new_edge[e] for e in graph.edges)
    if metric.normalized:
        lengths = normalize(lengths)
    return MetricRibbonGraph(graph, lengths, metric.normalized)


@dataclass(frozen=True)
class HeightFunction:
    """Distance to the basepoint, exact on vertices and along edges."""

    metric: MetricRibbonGraph
    vertex: dict

    def __getitem__(self, vertex):
        return self.vertex[vertex]

    def at(self, point):
        graph = self.metric.graph
        ell = self.metric.length(point.edge)
        if not 0 <= point.offset <= ell:
            raise PreconditionError(f"offset {point.offset} outside [0, {ell}] on edge {point.edge}")
        u, v = graph.endpoints(point.edge)
        return min(self.vertex[u] + point.offset, self.vertex[v] + ell - point.offset)


def heights(metric):
    """Shortest-path distance from the basepoint to every vertex.

    Args:
        metric (MetricRibbonGraph): graph with positive rational lengths

    Returns:
        HeightFunction: vertex heights plus evaluation at any GraphPoint
    """
    graph = metric.graph
    multi = nx.MultiGraph()
    multi.add_nodes_from(graph.vertices)
    for e, x in zip(graph.edges, metric.lengths, strict=True):
        u, v = graph.endpoints(e)
        if u != v:
            multi.add_edge(u, v, key=e, length=x)
    dist = nx.single_source_dijkstra_path_length(multi, graph.basepoint, weight="length")
    return HeightFunction(metric, {v: Fraction(dist[v]) for v in graph.vertices})
