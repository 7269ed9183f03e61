"""Canonical codes, isomorphism and automorphisms of basepointed graphs.

Ribbon mode respects cyclic orders and orientation; plain mode only sees the underlying
multigraph. In both modes the basepoint is fixed by every isomorphism.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from ..config import DEFAULT_LIMITS
from ..errors import CapacityError, UsageError
from ..graphs.ribbon import GraphKind, mirror

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Totally ordered fingerprint; equal codes mean isomorphic graphs in ``mode``."""

    mode: str
    values: tuple[int, ...]

    def __str__(self):
        return " ".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, mode, text):
        return cls(str(GraphKind(mode)), tuple(int(tok) for tok in text.split()))


def _resolve_mode(graph, mode):
    mode = GraphKind(mode) if mode is not None else graph.kind
    if mode == GraphKind.RIBBON and graph.kind == GraphKind.PLAIN:
        raise UsageError("a plain graph has no cyclic orders; use plain mode")
    return mode


# ---------------------------------------------------------------------------
# Ribbon mode
# ---------------------------------------------------------------------------


def _traverse(graph, root):
    """Breadth-first numbering from ``root`` visiting sigma then alpha images."""
    label = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (graph.sigma[x], graph.alpha[x]):
            if y not in label:
                label[y] = len(order)
                order.append(y)
    code = [graph.half_edge_count]
    for x in order:
        code.append(label[graph.sigma[x]])
        code.append(label[graph.alpha[x]])
    return tuple(code), tuple(order)


def _rooted_codes(graph):
    return [(*_traverse(graph, root), root) for root in graph.rotation(graph.basepoint)]


@lru_cache(maxsize=1 << 16)
def _ribbon_code(graph):
    return min(code for code, _, _ in _rooted_codes(graph))


def canonical_labelling(graph):
    """Half-edge order of the minimizing traversal; ``order[i]`` gets canonical label ``i``."""
    best = min(_rooted_codes(graph), key=lambda item: (item[0], item[2]))
    return best[1]


def _ribbon_automorphisms(graph):
    rooted = _rooted_codes(graph)
    best = min(code for code, _, _ in rooted)
    matching = [order for code, order, _ in rooted if code == best]
    ref = matching[0]
    autos = []
    for order in matching:
        perm = [0] * graph.half_edge_count
        for src, dst in zip(ref, order, strict=True):
            perm[src] = dst
        autos.append(tuple(perm))
    return sorted(autos)


# ---------------------------------------------------------------------------
# Plain mode
# ---------------------------------------------------------------------------


def _multiplicities(graph):
    mult = {}
    for e in graph.edges:
        u, v = sorted(graph.endpoints(e))
        mult[(u, v)] = mult.get((u, v), 0) + 1
    return mult


def _colour_classes(graph, mult):
    """Colour refinement seeded with (basepoint first, valence, loop count)."""
    vertices = graph.vertices
    neighbours = {v: [] for v in vertices}
    for (u, v), m in mult.items():
        if u != v:
            neighbours[u].append((v, m))
            neighbours[v].append((u, m))

    def rank(keys):
        distinct = sorted(set(keys.values()))
        index = {k: i for i, k in enumerate(distinct)}
        return {v: index[keys[v]] for v in vertices}

    colour = rank({v: (0 if v == graph.basepoint else 1, graph.valence(v), mult.get((v, v), 0)) for v in vertices})
    while True:
        signature = {v: (colour[v], tuple(sorted((colour[w], m) for w, m in neighbours[v]))) for v in vertices}
        refined = rank(signature)
        if len(set(refined.values())) == len(set(colour.values())):
            break
        colour = refined
    classes = {}
    for v in vertices:
        classes.setdefault(colour[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def _plain_orderings(graph, limits):
    if graph.edge_count > limits.canon_edges:
        raise CapacityError(f"plain canonical codes are capped at {limits.canon_edges} edges, got {graph.edge_count}")
    mult = _multiplicities(graph)
    classes = _colour_classes(graph, mult)
    count = 1
    for cls in classes:
        count *= factorial(len(cls))
    if count > limits.automorphisms:
        raise CapacityError(f"{count} vertex orderings exceed the cap of {limits.automorphisms}")

    def matrix(ordering):
        values = [len(ordering)]
        for i, u in enumerate(ordering):
            for v in ordering[i:]:
                values.append(mult.get((min(u, v), max(u, v)), 0))
        return tuple(values)

    for choice in product(*(permutations(cls) for cls in classes)):
        ordering = tuple(v for part in choice for v in part)
        yield matrix(ordering), ordering


@lru_cache(maxsize=1 << 16)
def _plain_code(graph, limits=DEFAULT_LIMITS):
    return min(code for code, _ in _plain_orderings(graph, limits))


def _edges_between(graph):
    between = {}
    for e in graph.edges:
        h, hb = e, graph.alpha[e]
        u, v = graph.vertex_of[h], graph.vertex_of[hb]
        if u > v:
            h, hb, u, v = hb, h, v, u
        between.setdefault((u, v), []).append((h, hb))
    return between


def _vertex_maps(graph, limits):
    best = None
    maps = []
    for code, ordering in _plain_orderings(graph, limits):
        if best is None or code < best[0]:
            best = (code, ordering)
            maps = [ordering]
        elif code == best[0]:
            maps.append(ordering)
    ref = best[1]
    return [dict(zip(ref, ordering, strict=True)) for ordering in maps]


def _plain_automorphisms(graph, limits, flips=True):
    between = _edges_between(graph)
    autos = set()
    for vmap in _vertex_maps(graph, limits):
        options = []
        for (u, v), pairs in sorted(between.items()):
            iu, iv = vmap[u], vmap[v]
            targets = between[(min(iu, iv), max(iu, iv))]
            swapped = iu > iv
            per_pair = []
            for image in permutations(targets):
                if u == v and flips:
                    for mask in product((False, True), repeat=len(pairs)):
                        per_pair.append(tuple(zip(pairs, image, mask, strict=True)))
                else:
                    per_pair.append(tuple((p, t, swapped) for p, t in zip(pairs, image, strict=True)))
            options.append(per_pair)
        for combo in product(*options):
            perm = [0] * graph.half_edge_count
            for block in combo:
                for (h, hb), (t, tb), flip in block:
                    if flip:
                        t, tb = tb, t
                    perm[h], perm[hb] = t, tb
            autos.add(tuple(perm))
            if len(autos) > limits.automorphisms:
                raise CapacityError(f"automorphism group exceeds the cap of {limits.automorphisms}")
    return sorted(autos)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def canonical_code(graph, mode=None, orientation_agnostic=False, limits=DEFAULT_LIMITS):
    """Canonical code of ``graph``.

    Args:
        graph (RibbonGraph | PlainGraph): a valid graph
        mode (GraphKind | str | None): 'ribbon' or 'plain'; defaults to the graph's kind
        orientation_agnostic (bool): ribbon mode only, identify a graph with its mirror image
        limits (Limits): caps for plain mode

    Returns:
        CanonicalCode
    """
    mode = _resolve_mode(graph, mode)
    if mode == GraphKind.PLAIN:
        return CanonicalCode(str(mode), _plain_code(graph, limits))
    values = _ribbon_code(graph)
    if orientation_agnostic:
        values = min(values, _ribbon_code(mirror(graph)))
    return CanonicalCode(str(mode), values)


def is_isomorphic(first, second, mode=None):
    if first.kind != second.kind:
        raise UsageError(f"cannot compare a {first.kind} graph with a {second.kind} graph")
    if (first.vertex_count, first.edge_count) != (second.vertex_count, second.edge_count):
        return False
    return canonical_code(first, mode) == canonical_code(second, mode)


def automorphisms(graph, mode=None, limits=DEFAULT_LIMITS):
    """Half-edge permutations commuting with alpha and preserving vertices and basepoint.

    In ribbon mode they also commute with sigma. Returned sorted, identity included.
    """
    mode = _resolve_mode(graph, mode)
    if mode == GraphKind.RIBBON:
        return _ribbon_automorphisms(graph)
    return _plain_automorphisms(graph, limits)


def edge_action(graph, mode=None, include_loops=False, limits=DEFAULT_LIMITS):
    """Distinct permutations of edge ids induced by the automorphism group.

    Each element is a dict ``edge id -> edge id``. Loops are left out unless asked for,
    since no forest contains one.
    """
    mode = _resolve_mode(graph, mode)
    if mode == GraphKind.RIBBON:
        perms = _ribbon_automorphisms(graph)
    else:
        perms = _plain_automorphisms(graph, limits, flips=False)
    edges = [e for e in graph.edges if include_loops or not graph.is_loop(e)]
    seen = set()
    actions = []
    for perm in perms:
        image = tuple(graph.edge_of(perm[e]) for e in edges)
        if image not in seen:
            seen.add(image)
            actions.append(dict(zip(edges, image, strict=True)))
    return actions


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def brute_force_isomorphic(first, second, mode=None):
    """Search all vertex bijections and per-vertex half-edge bijections directly.

    Ribbon mode tries the cyclic shifts of each rotation, plain mode every ordering of the
    half-edges at a vertex. Meant for small graphs only.
    """
    if first.kind != second.kind:
        raise UsageError(f"cannot compare a {first.kind} graph with a {second.kind} graph")
    mode = _resolve_mode(first, mode)
    if (first.half_edge_count, first.vertex_count) != (second.half_edge_count, second.vertex_count):
        return False
    if first.valence(first.basepoint) != second.valence(second.basepoint):
        return False

    def local_maps(u, v):
        src = first.rotation(u)
        dst = second.rotation(v)
        if mode == GraphKind.RIBBON:
            for shift in range(len(dst)):
                yield dict(zip(src, dst[shift:] + dst[:shift], strict=True))
        else:
            for image in permutations(dst):
                yield dict(zip(src, image, strict=True))

    def consistent(mapping):
        for h, t in mapping.items():
            partner = mapping.get(first.alpha[h])
            if partner is not None and partner != second.alpha[t]:
                return False
        return True

    sources = [first.basepoint] + list(first.non_basepoint_vertices)

    def search(index, used, mapping):
        if index == len(sources):
            return True
        u = sources[index]
        targets = [second.basepoint] if index == 0 else second.non_basepoint_vertices
        for v in targets:
            if v in used or second.valence(v) != first.valence(u):
                continue
            for local in local_maps(u, v):
                merged = {**mapping, **local}
                if consistent(merged) and search(index + 1, used | {v}, merged):
                    return True
        return False

    return search(0, frozenset(), {})
