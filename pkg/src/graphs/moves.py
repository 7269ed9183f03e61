"""Forest collapse and allowed expansion: the moves between neighbouring graphs.

Collapse keeps the cyclic orders induced by the ribbon structure; expansion is its inverse
and only splits a vertex along two consecutive arcs of its rotation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

from ..data.validator import is_valid
from ..errors import ExpansionError, InvalidForestError, StructuralError
from ..graphs.ribbon import GraphKind

logger = logging.getLogger(__name__)

Forest = frozenset


@dataclass(frozen=True)
class ArcPartition:
    """Split of the half-edges at ``vertex`` into two arcs.

    ``first`` stays with the vertex (and with the basepoint when ``vertex`` is the
    basepoint); ``second`` moves to the new vertex. Both arcs are listed in rotation order.
    """

    vertex: int
    first: tuple[int, ...]
    second: tuple[int, ...]


# ---------------------------------------------------------------------------
# Forests
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def check_forest(graph, forest):
    """Raise InvalidForestError unless ``forest`` is a loop-free acyclic set of edge ids."""
    uf = _UnionFind(graph.vertices)
    for e in sorted(forest):
        if e not in graph.edges:
            raise InvalidForestError(f"{e} is not an edge id")
        u, v = graph.endpoints(e)
        if u == v:
            raise InvalidForestError(f"edge {e} is a loop")
        if not uf.union(u, v):
            raise InvalidForestError(f"edge {e} closes a cycle")


def is_forest(graph, edges):
    try:
        check_forest(graph, edges)
    except InvalidForestError:
        return False
    return True


def enumerate_forests(graph):
    """All non-empty forests of ``graph``, each once, ordered by size then by edge ids."""
    candidates = [e for e in graph.edges if not graph.is_loop(e)]
    found = []

    def extend(start, chosen, uf_parent):
        for i in range(start, len(candidates)):
            e = candidates[i]
            u, v = graph.endpoints(e)
            uf = _UnionFind(graph.vertices)
            uf.parent = dict(uf_parent)
            if not uf.union(u, v):
                continue
            forest = chosen + (e,)
            found.append(forest)
            extend(i + 1, forest, uf.parent)

    extend(0, (), {v: v for v in graph.vertices})
    return tuple(Forest(f) for f in sorted(found, key=lambda f: (len(f), f)))


# ---------------------------------------------------------------------------
# Collapse
# ---------------------------------------------------------------------------


def _rebuild(graph, sigma, alpha, base_rep):
    """Renumber surviving half-edges densely (order preserving) into a new graph value."""
    survivors = sorted(sigma)
    label = {h: i for i, h in enumerate(survivors)}
    new_sigma = tuple(label[sigma[h]] for h in survivors)
    new_alpha = tuple(label[alpha[h]] for h in survivors)
    rep = label[base_rep]
    h = new_sigma[rep]
    basepoint = rep
    while h != rep:
        basepoint = min(basepoint, h)
        h = new_sigma[h]
    return type(graph)(new_sigma, new_alpha, basepoint), label


def _contract(sigma, alpha, h):
    """Contract the non-loop edge {h, alpha[h]} in the dict-based rotation ``sigma``."""
    hb = alpha[h]
    u_side = [h]
    x = sigma[h]
    while x != h:
        u_side.append(x)
        x = sigma[x]
    if hb in u_side:
        raise InvalidForestError(f"edge {min(h, hb)} is a loop after earlier contractions")
    v_side = [hb]
    x = sigma[hb]
    while x != hb:
        v_side.append(x)
        x = sigma[x]
    merged = v_side[1:] + u_side[1:]
    del sigma[h], sigma[hb], alpha[h], alpha[hb]
    for i, x in enumerate(merged):
        sigma[x] = merged[(i + 1) % len(merged)]
    return merged


def collapse_forest_with_labels(graph, forest):
    """Collapse ``forest`` and also return the map from surviving old to new half-edges."""
    check_forest(graph, forest)
    sigma = dict(enumerate(graph.sigma))
    alpha = dict(enumerate(graph.alpha))
    base_rep = graph.basepoint
    for e in sorted(forest):
        merged = _contract(sigma, alpha, e)
        if base_rep in (e, graph.alpha[e]):
            if not merged:
                raise StructuralError("collapsing the forest leaves no half-edges")
            base_rep = merged[0]
    if not sigma:
        raise StructuralError("collapsing the forest leaves no half-edges")
    return _rebuild(graph, sigma, alpha, base_rep)


def collapse_forest(graph, forest):
    """Contract every edge of ``forest`` and return the graph with the induced rotations.

    Args:
        graph (RibbonGraph | PlainGraph): host graph
        forest (Iterable[int]): edge ids, loop free and acyclic

    Returns:
        RibbonGraph | PlainGraph: same kind as ``graph``; the basepoint is the merged
        vertex that contains the old basepoint
    """
    forest = Forest(forest)
    if not forest:
        return graph
    collapsed, _ = collapse_forest_with_labels(graph, forest)
    return collapsed


# ---------------------------------------------------------------------------
# Smoothing
# ---------------------------------------------------------------------------


def smooth_vertex(graph, vertex):
    """Erase a bivalent non-basepoint vertex, joining its two edges into one.

    With ``p < q`` the halves at ``vertex``, the far half of ``q``'s edge takes the label
    ``p`` and the remaining labels are renumbered order preserving, so a vertex created by
    an expansion disappears without disturbing the labels below it.

    Returns:
        tuple: the smoothed graph and ``{new edge id: old edge ids}``; the joined edge maps
        to both of its old edges
    """
    if vertex == graph.basepoint:
        raise StructuralError("the basepoint cannot be smoothed")
    rotation = graph.rotation(vertex)
    if len(rotation) != 2:
        raise StructuralError(f"vertex {vertex} has valence {len(rotation)}, smoothing needs 2")
    p, q = sorted(rotation)
    if graph.alpha[p] == q:
        raise StructuralError(f"vertex {vertex} carries only a loop")
    a, b = graph.alpha[p], graph.alpha[q]

    def rename(h):
        return p if h == b else h

    sigma, alpha = {}, {}
    for h in range(graph.half_edge_count):
        if h in (p, q):
            continue
        sigma[rename(h)] = rename(graph.sigma[h])
        alpha[rename(h)] = rename(graph.alpha[h])
    alpha[a], alpha[p] = p, a
    smoothed, label = _rebuild(graph, sigma, alpha, rename(graph.basepoint))

    paths = {}
    for e in graph.edges:
        if e in (graph.edge_of(p), graph.edge_of(q)):
            continue
        paths[smoothed.edge_of(label[e])] = (e,)
    paths[smoothed.edge_of(label[a])] = (graph.edge_of(p), graph.edge_of(q))
    return smoothed, paths


def smooth_bivalent_vertices(graph):
    """Smooth every bivalent non-basepoint vertex.

    Returns:
        tuple: the smoothed graph and ``{new edge id: old edge ids}`` relative to ``graph``
    """
    paths = {e: (e,) for e in graph.edges}
    while True:
        bivalent = [v for v in graph.non_basepoint_vertices if graph.valence(v) == 2]
        if not bivalent:
            return graph, paths
        graph, step = smooth_vertex(graph, bivalent[0])
        paths = {e: tuple(old for part in parts for old in paths[part]) for e, parts in step.items()}
        logger.debug("smoothed vertex %d", bivalent[0])


# ---------------------------------------------------------------------------
# Expansion
# ---------------------------------------------------------------------------


def _arc_start(rotation, arc):
    """Start index of ``arc`` (a set) in the cyclic ``rotation``, or None if not consecutive."""
    size = len(rotation)
    starts = [i for i in range(size) if rotation[i] in arc and rotation[i - 1] not in arc]
    if len(starts) != 1:
        return None
    return starts[0]


def _arc_partitions(rotation):
    size = len(rotation)
    for i, j in combinations(range(size), 2):
        inner = rotation[i:j]
        outer = rotation[j:] + rotation[:i]
        yield inner, outer


def _set_partitions(rotation):
    # Every split into two non-empty sets, each unordered pair once.
    size = len(rotation)
    first = rotation[0]
    rest = rotation[1:]
    for r in range(0, size - 1):
        for combo in combinations(rest, r):
            inner = (first,) + combo
            outer = tuple(h for h in rest if h not in combo)
            yield inner, outer


def splice_partition(graph, vertex, first, second):
    """Split ``vertex`` into ``(x, *first)`` and ``(x', *second)`` without any arc check.

    The new edge takes half-edges ``2E`` (kept side) and ``2E + 1`` (new vertex), so every
    existing half-edge keeps its label.
    """
    rotation = graph.rotation(vertex)
    if sorted(first + second) != sorted(rotation) or not first or not second:
        raise ExpansionError(f"partition does not split the half-edges at vertex {vertex} into two non-empty sets")
    size = graph.half_edge_count
    x, xb = size, size + 1
    sigma = list(graph.sigma) + [0, 0]
    alpha = list(graph.alpha) + [xb, x]
    for side, new in ((first, x), (second, xb)):
        cycle = (new,) + tuple(side)
        for i, h in enumerate(cycle):
            sigma[h] = cycle[(i + 1) % len(cycle)]
    basepoint = min(first) if vertex == graph.basepoint else graph.basepoint
    return type(graph)(tuple(sigma), tuple(alpha), basepoint)


def expand(graph, part):
    """Replace ``part.vertex`` by an edge whose endpoints carry the two arcs.

    Args:
        graph (RibbonGraph | PlainGraph): host graph
        part (ArcPartition): split of the vertex's half-edges

    Returns:
        RibbonGraph | PlainGraph: graph with one more edge, whose id is ``2E``; collapsing
        that edge gives back ``graph``
    """
    rotation = graph.rotation(part.vertex)
    first, second = tuple(part.first), tuple(part.second)
    if set(first) & set(second) or set(first) | set(second) != set(rotation) or not first or not second:
        raise ExpansionError(f"partition does not split the half-edges at vertex {part.vertex} into two non-empty sets")
    if graph.kind == GraphKind.RIBBON:
        start = _arc_start(rotation, set(first))
        if start is None:
            raise ExpansionError(f"half-edges {sorted(first)} are not consecutive at vertex {part.vertex}")
        rotated = rotation[start:] + rotation[:start]
        first, second = rotated[: len(first)], rotated[len(first) :]
    return splice_partition(graph, part.vertex, first, second)


def new_edge(graph):
    """Edge id of the edge created by ``expand(graph, ...)``."""
    return graph.half_edge_count


def allowed_expansions(graph, vertex, filtered=True):
    """All allowed expansions at ``vertex``.

    For a ribbon graph the sides are consecutive arcs; for a plain graph any split into two
    non-empty sets. At a non-basepoint vertex each unordered split appears once. At the
    basepoint the partition is ordered: ``first`` keeps the basepoint, so a split whose two
    sides are both legal there is listed twice, once per side. A valence-4 basepoint on
    ``abab`` thus gives 8 partitions, not the 6 unordered ones.

    Args:
        graph (RibbonGraph | PlainGraph): host graph
        vertex (int): vertex id
        filtered (bool): keep only expansions whose result passes validation

    Returns:
        tuple[ArcPartition, ...]
    """
    rotation = graph.rotation(vertex)
    splits = _arc_partitions(rotation) if graph.kind == GraphKind.RIBBON else _set_partitions(rotation)
    parts = []
    for first, second in splits:
        parts.append(ArcPartition(vertex, tuple(first), tuple(second)))
        if vertex == graph.basepoint:
            parts.append(ArcPartition(vertex, tuple(second), tuple(first)))
    if not filtered:
        return tuple(parts)
    kept = []
    for part in parts:
        # The kept side needs valence 2 at the basepoint and 3 elsewhere; the new side always 3.
        need_first = 2 if vertex == graph.basepoint else 3
        if len(part.first) + 1 < need_first or len(part.second) + 1 < 3:
            continue
        if is_valid(expand(graph, part)):
            kept.append(part)
    logger.debug("vertex %d: %d of %d expansions allowed", vertex, len(kept), len(parts))
    return tuple(kept)


def non_allowed_partitions(graph, vertex):
    """Splits of the half-edges at ``vertex`` into two sets that are not consecutive arcs."""
    rotation = graph.rotation(vertex)
    out = []
    for first, second in _set_partitions(rotation):
        if _arc_start(rotation, set(first)) is None:
            ordered_first = tuple(h for h in rotation if h in first)
            ordered_second = tuple(h for h in rotation if h in second)
            out.append(ArcPartition(vertex, ordered_first, ordered_second))
    return tuple(out)
