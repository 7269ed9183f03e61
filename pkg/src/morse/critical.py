"""Critical points of the height function and canonical splitting.

A half-edge ``y`` at vertex ``x`` points downward when the far end of its edge is exactly
``length`` lower than ``x``. Loops never point downward. A non-basepoint vertex is critical
when at least two of its half-edges point downward; an edge whose two halves both point
upward carries one interior critical point, where the two approaches to the basepoint meet.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from ..canon.codes import canonical_labelling
from .metric import GraphPoint, collapse_metric, heights

logger = logging.getLogger(__name__)


class PointKind(StrEnum):
    VERTEX = "vertex"
    INTERIOR = "interior"


@dataclass(frozen=True)
class CriticalPoint:
    """A critical point and its cone.

    For a vertex, ``downward`` lists the downward half-edges at it. For an interior point
    on edge ``{h, h'}`` it is ``(h, h')``: the half-edges through which the two downward
    directions reach the endpoints.
    """

    kind: PointKind
    height: Fraction
    codimension: int
    downward: tuple[int, ...]
    vertex: int | None = None
    point: GraphPoint | None = None

    @property
    def label(self):
        if self.kind == PointKind.VERTEX:
            return f"v{self.vertex}"
        return f"e{self.point.edge}@{self.point.offset}"


@dataclass(frozen=True)
class ExtendedBranch:
    """Downward walk from a critical point to the next critical vertex or the basepoint.

    Attributes:
        source (int): index of the starting point in ``CriticalStructure.points``
        edges (tuple[int, ...]): edge ids traversed, top to bottom
        end (int): vertex where the walk stops
        arrival (int): half-edge at ``end`` through which the walk arrives
        ends_at_critical (bool): False when the walk reaches the basepoint
    """

    source: int
    edges: tuple[int, ...]
    end: int
    arrival: int
    ends_at_critical: bool


@dataclass(frozen=True)
class CriticalStructure:
    points: tuple[CriticalPoint, ...]
    branches: tuple[ExtendedBranch, ...]
    complexity: int
    extended_complexity: int

    @property
    def codimension(self):
        return sum(p.codimension for p in self.points)

    @property
    def critical_vertices(self):
        return tuple(p.vertex for p in self.points if p.kind == PointKind.VERTEX)

    def cone(self, vertex):
        """Downward half-edges (the branches) at a critical vertex."""
        for p in self.points:
            if p.kind == PointKind.VERTEX and p.vertex == vertex:
                return p.downward
        return ()

    def branches_from(self, index):
        return tuple(b for b in self.branches if b.source == index)

    def branches_into(self, vertex):
        return tuple(b for b in self.branches if b.ends_at_critical and b.end == vertex)


def downward_half_edges(metric, height, vertex):
    graph = metric.graph
    down = []
    for y in graph.rotation(vertex):
        far = graph.vertex_of[graph.alpha[y]]
        if far != vertex and height[far] + metric.length(graph.edge_of(y)) == height[vertex]:
            down.append(y)
    return tuple(down)


def interior_critical_point(metric, height, edge):
    """Interior local maximum on ``edge`` or None when the edge is monotone."""
    graph = metric.graph
    u, v = graph.endpoints(edge)
    ell = metric.length(edge)
    if abs(height[u] - height[v]) >= ell:
        return None
    # h(u) + t == h(v) + (ell - t)
    t = (height[v] + ell - height[u]) / 2
    return GraphPoint(edge, t), height[u] + t


def critical_structure(metric):
    """Critical points, extended branches and the complexity pair of ``metric``.

    Args:
        metric (MetricRibbonGraph): graph with positive lengths

    Returns:
        CriticalStructure: points ordered vertices first (by id) then interior points
        (by edge id); ``complexity`` counts downward paths from a critical point that end
        at a critical point, ``extended_complexity`` those without a critical point inside
    """
    graph = metric.graph
    height = heights(metric)
    down = {v: downward_half_edges(metric, height, v) for v in graph.vertices}

    points = []
    for v in graph.non_basepoint_vertices:
        if len(down[v]) >= 2:
            points.append(CriticalPoint(PointKind.VERTEX, height[v], len(down[v]) - 1, down[v], vertex=v))
    critical = {p.vertex for p in points}
    for e in graph.edges:
        found = interior_critical_point(metric, height, e)
        if found is not None:
            point, h = found
            points.append(CriticalPoint(PointKind.INTERIOR, h, 0, (e, graph.alpha[e]), point=point))

    def walk(index, edges, arrival):
        x = graph.vertex_of[arrival]
        edges = list(edges)
        while x != graph.basepoint and x not in critical:
            (step,) = down[x]
            edges.append(graph.edge_of(step))
            arrival = graph.alpha[step]
            x = graph.vertex_of[arrival]
        return ExtendedBranch(index, tuple(edges), x, arrival, x != graph.basepoint)

    branches = []
    for index, p in enumerate(points):
        if p.kind == PointKind.VERTEX:
            for y in p.downward:
                branches.append(walk(index, (graph.edge_of(y),), graph.alpha[y]))
        else:
            for arrival in p.downward:
                branches.append(walk(index, (p.point.edge,), arrival))

    vertex_index = {p.vertex: i for i, p in enumerate(points) if p.kind == PointKind.VERTEX}
    paths = {}

    def paths_from(index):
        if index not in paths:
            total = 0
            for b in branches:
                if b.source == index and b.ends_at_critical:
                    total += 1 + paths_from(vertex_index[b.end])
            paths[index] = total
        return paths[index]

    c = sum(paths_from(i) for i in range(len(points)))
    e = sum(1 for b in branches if b.ends_at_critical)
    return CriticalStructure(tuple(points), tuple(branches), c, e)


def split_candidates(metric, height=None):
    """Non-critical non-basepoint vertices with one downward and at least two upward half-edges."""
    graph = metric.graph
    height = height or heights(metric)
    found = []
    for v in graph.non_basepoint_vertices:
        d = downward_half_edges(metric, height, v)
        if len(d) == 1 and graph.valence(v) - 1 >= 2:
            found.append((v, d[0]))
    return found


def is_canonically_split(metric):
    return not split_candidates(metric)


def canonical_split_with_forest(metric, reverse_ties=False):
    """Canonical splitting that also reports the contracted edges as ids of ``metric``.

    Vertices are handled from the top down. Among vertices of equal height the one whose
    smallest canonical half-edge label is lowest goes first (last with ``reverse_ties``).
    """
    origin = list(range(metric.graph.half_edge_count))
    contracted = []
    current = metric
    while True:
        height = heights(current)
        candidates = split_candidates(current, height)
        if not candidates:
            break
        order = canonical_labelling(current.graph)
        rank = {h: i for i, h in enumerate(order)}

        def key(item, height=height, rank=rank, graph=current.graph):
            v, _ = item
            first = min(rank[h] for h in graph.rotation(v))
            return (-height[v], -first if reverse_ties else first)

        v, step = min(candidates, key=key)
        edge = current.graph.edge_of(step)
        contracted.append(origin[edge])
        logger.debug("contracting edge %d below vertex %d at height %s", origin[edge], v, height[v])
        kept = [h for h in range(current.graph.half_edge_count) if h not in (edge, current.graph.alpha[edge])]
        origin = [origin[h] for h in kept]
        current = collapse_metric(current, {edge})
    return current, frozenset(contracted)


def canonical_split(metric):
    """Contract, top-down, the downward edge of every non-critical branching vertex.

    Args:
        metric (MetricRibbonGraph): graph with positive lengths

    Returns:
        MetricRibbonGraph: a graph whose non-basepoint vertices are all critical
    """
    split, _ = canonical_split_with_forest(metric)
    return split
