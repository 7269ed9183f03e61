"""Attaching sets at critical vertices and sliding branches into epsilon cones."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from ..errors import AttachingSpaceError, ConsistencyError, PreconditionError
from ..graphs.moves import ArcPartition, expand, smooth_bivalent_vertices
from .critical import PointKind, critical_structure, is_canonically_split
from .metric import MetricRibbonGraph, heights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttachingSet:
    """Maximal run of upward half-edges at ``vertex``, in rotation order.

    ``negative`` is the first downward half-edge met going backward from the run,
    ``positive`` the first met going forward.
    """

    vertex: int
    members: tuple[int, ...]
    negative: int
    positive: int


@dataclass(frozen=True)
class AttachingStructure:
    epsilon: Fraction
    sets: tuple[AttachingSet, ...]

    def sets_at(self, vertex):
        return tuple(s for s in self.sets if s.vertex == vertex)

    def dimension_at(self, vertex):
        return sum(len(s.members) for s in self.sets_at(vertex))

    @property
    def dimension(self):
        return sum(len(s.members) for s in self.sets)

    def set_of(self, half_edge):
        for s in self.sets:
            if half_edge in s.members:
                return s
        return None

    def directions(self, half_edge):
        """``(negative, positive)`` downward directions of an upward half-edge."""
        s = self.set_of(half_edge)
        if s is None:
            raise AttachingSpaceError(f"half-edge {half_edge} is not an upward half-edge at a critical vertex")
        return s.negative, s.positive


def _critical_heights(metric):
    structure = critical_structure(metric)
    return sorted({Fraction(0)} | {p.height for p in structure.points})


def epsilon_bounds(metric):
    """The two strict upper bounds on epsilon: half the smallest gap, and the shortest edge."""
    levels = _critical_heights(metric)
    gaps = [b - a for a, b in zip(levels, levels[1:], strict=False)]
    half_gap = min(gaps) / 2 if gaps else None
    return half_gap, min(metric.lengths)


def epsilon_bound(metric):
    """Supremum of legal epsilons; any epsilon strictly below it is accepted."""
    half_gap, shortest = epsilon_bounds(metric)
    return shortest if half_gap is None else min(half_gap, shortest)


def default_epsilon(metric):
    return epsilon_bound(metric) / 2


def attaching_structure(metric, epsilon):
    """Attaching sets of every critical vertex of a canonically split graph.

    Args:
        metric (MetricRibbonGraph): canonically split graph
        epsilon (Fraction): cone radius, below both bounds of ``epsilon_bounds``

    Returns:
        AttachingStructure
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise PreconditionError(f"epsilon must be positive, got {epsilon}")
    low = [v for v in metric.graph.non_basepoint_vertices if metric.graph.valence(v) < 3]
    if low:
        raise PreconditionError(f"vertex {low[0]} has valence below 3")
    if not is_canonically_split(metric):
        raise PreconditionError("graph is not canonically split")
    half_gap, shortest = epsilon_bounds(metric)
    if half_gap is not None and epsilon >= half_gap:
        raise PreconditionError(f"epsilon {epsilon} is not below half the minimum critical height gap ({half_gap})")
    if epsilon >= shortest:
        raise PreconditionError(f"epsilon {epsilon} is not below the minimum edge length ({shortest})")

    graph = metric.graph
    height = heights(metric)
    structure = critical_structure(metric)
    sets = []
    for p in structure.points:
        if p.kind != PointKind.VERTEX:
            continue
        down = set(p.downward)
        rotation = graph.rotation(p.vertex)
        start = next(i for i, h in enumerate(rotation) if h in down)
        ordered = rotation[start:] + rotation[:start]
        run = []
        previous = ordered[0]
        for h in ordered[1:] + (ordered[0],):
            if h in down:
                if run:
                    sets.append(AttachingSet(p.vertex, tuple(run), previous, h))
                run = []
                previous = h
            else:
                run.append(h)
    result = AttachingStructure(epsilon, tuple(sets))
    if result.dimension != structure.extended_complexity:
        raise ConsistencyError(
            f"attaching space dimension {result.dimension} differs from {structure.extended_complexity} extended branches"
        )
    logger.debug("attaching space of dimension %d at heights %s", result.dimension, dict(height.vertex))
    return result


def _check_targets(structure, targets):
    for h, y in targets.items():
        s = structure.set_of(h)
        if s is None:
            raise AttachingSpaceError(f"half-edge {h} is not an upward half-edge at a critical vertex")
        if not -structure.epsilon < y < structure.epsilon:
            raise AttachingSpaceError(f"target {y} for half-edge {h} is outside (-{structure.epsilon}, {structure.epsilon})")
    for s in structure.sets:
        values = [targets.get(h, Fraction(0)) for h in s.members]
        for k in range(len(values) - 1):
            if values[k] > values[k + 1]:
                raise AttachingSpaceError(
                    f"targets at vertex {s.vertex} break the order y_k <= y_k+1: "
                    f"{s.members[k]} -> {values[k]}, {s.members[k + 1]} -> {values[k + 1]}"
                )


def _slides_by_direction(structure, targets):
    """Group nonzero targets by the downward half-edge they slide into.

    Returns ``{down: (left, right)}`` where ``left`` holds members that sit just before
    ``down`` (positive targets) and ``right`` those just after it (negative targets),
    each as ``(half_edge, depth)`` in rotation order.
    """
    by_down = {}
    for s in structure.sets:
        for h in s.members:
            y = targets.get(h, Fraction(0))
            if y > 0:
                by_down.setdefault(s.positive, ([], []))[0].append((h, y))
            elif y < 0:
                by_down.setdefault(s.negative, ([], []))[1].append((h, -y))
    return by_down


def slide_branches(metric, targets, epsilon):
    """Move several branch attaching points into their epsilon cones at once.

    A positive target slides the branch arriving through that upward half-edge down the
    positive downward direction by that amount, a negative target down the negative one.
    Each distinct depth on a downward edge becomes one allowed expansion. A critical
    vertex left with two half-edges is smoothed away, its two edges joined into one.

    Sliding moves attaching points, it does not grow the graph: each downward edge is
    shortened by the deepest slide into it and the total length is unchanged. Collapsing
    ``created_edges`` gives back the graph of ``metric``, though not its lengths.

    Args:
        metric (MetricRibbonGraph): canonically split graph
        targets (dict[int, Fraction]): upward half-edge -> signed target in (-epsilon, epsilon)
        epsilon (Fraction): cone radius

    Returns:
        MetricRibbonGraph: the slid graph; half-edges away from a smoothed vertex keep
        their labels and the new edges have ids from ``2E`` on
    """
    targets = {int(h): Fraction(y) for h, y in targets.items()}
    structure = attaching_structure(metric, epsilon)
    _check_targets(structure, targets)

    graph = metric.graph
    lengths = dict(zip(graph.edges, metric.lengths, strict=True))
    for down, (left, right) in sorted(_slides_by_direction(structure, targets).items()):
        vertex = graph.vertex_of[down]
        depths = sorted({d for _, d in left} | {d for _, d in right})
        reached = Fraction(0)
        for depth in depths:
            moving = tuple(h for h, d in left if d >= depth) + (down,) + tuple(h for h, d in right if d >= depth)
            staying = tuple(h for h in graph.rotation(vertex) if h not in moving)
            part = ArcPartition(vertex, staying, moving)
            graph = expand(graph, part)
            step = depth - reached
            lengths[graph.edge_of(graph.half_edge_count - 2)] = step
            lengths[graph.edge_of(down)] -= step
            reached = depth
            vertex = graph.vertex_of[down]
    graph, paths = smooth_bivalent_vertices(graph)
    slid = MetricRibbonGraph(graph, tuple(sum(lengths[old] for old in paths[e]) for e in graph.edges), metric.normalized)
    logger.debug("slid %d branches, %d new edges", len(targets), graph.edge_count - metric.graph.edge_count)
    return slid


def slide_branch(metric, branch, target, epsilon):
    """Slide the branch arriving through upward half-edge ``branch`` to ``target``.

    ``target == 0`` returns ``metric`` unchanged.
    """
    target = Fraction(target)
    if target == 0:
        attaching_structure(metric, epsilon).directions(branch)
        return metric
    return slide_branches(metric, {branch: target}, epsilon)


def created_edges(original, slid):
    """Edge ids of ``slid`` that were added by sliding ``original``."""
    return frozenset(e for e in slid.graph.edges if e >= original.graph.half_edge_count)
