"""Enumeration of vertex classes of degree complexes.

Roses come from an exhaustive census; every other vertex class is reached from a rose by
allowed expansions that keep the degree at most ``k``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from multiprocessing import Pool

from ..canon.codes import canonical_code
from ..config import DEFAULT_LIMITS
from ..data.validator import is_valid
from ..errors import CapacityError, PreconditionError
from ..graphs.moves import allowed_expansions, expand
from ..graphs.ribbon import GraphKind, PlainGraph, RibbonGraph, SurfaceType, degree, mirror, surface_type

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphSpace:
    """Which graphs a complex is built from: ribbon graphs of type (g, p) or plain graphs of rank n."""

    mode: GraphKind
    params: tuple[int, ...]

    @classmethod
    def ribbon(cls, genus, punctures):
        if genus < 0 or punctures < 1 or 2 * genus + punctures - 1 < 1:
            raise PreconditionError(f"no ribbon graphs of rank >= 1 for genus {genus}, punctures {punctures}")
        return cls(GraphKind.RIBBON, (genus, punctures))

    @classmethod
    def plain(cls, rank):
        if rank < 1:
            raise PreconditionError(f"rank must be at least 1, got {rank}")
        return cls(GraphKind.PLAIN, (rank,))

    @property
    def rank(self):
        if self.mode == GraphKind.RIBBON:
            genus, punctures = self.params
            return 2 * genus + punctures - 1
        return self.params[0]

    @property
    def surface(self):
        return SurfaceType(*self.params) if self.mode == GraphKind.RIBBON else None

    @property
    def max_degree(self):
        """Largest degree any valid graph of this rank can have (basepoint of valence 2)."""
        return 2 * self.rank - 2

    def __str__(self):
        if self.mode == GraphKind.RIBBON:
            return f"ribbon(g={self.params[0]}, p={self.params[1]})"
        return f"plain(n={self.params[0]})"


def _perfect_matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for tail in _perfect_matchings(remaining):
            yield ((first, partner),) + tail


def enumerate_roses(genus, punctures, limits=DEFAULT_LIMITS):
    """Isomorphism classes of one-vertex ribbon graphs of type (genus, punctures).

    The rotation is fixed to ``0 -> 1 -> ... -> 2n-1 -> 0`` and every pairing of the
    half-edges is tried; each one-vertex map arises this way.

    Returns:
        dict[CanonicalCode, RibbonGraph]: representatives in code order
    """
    space = GraphSpace.ribbon(genus, punctures)
    n = space.rank
    if n > limits.rose_loops:
        raise CapacityError(f"rose census is capped at {limits.rose_loops} loops, got {n}")
    size = 2 * n
    sigma = tuple((h + 1) % size for h in range(size))
    target = space.surface
    found = {}
    tried = 0
    for matching in _perfect_matchings(tuple(range(size))):
        tried += 1
        alpha = [0] * size
        for a, b in matching:
            alpha[a], alpha[b] = b, a
        rose = RibbonGraph(sigma, tuple(alpha), 0)
        if surface_type(rose) != target:
            continue
        code = canonical_code(rose)
        found.setdefault(code, rose)
    logger.info("rose census %s: %d pairings, %d classes", space, tried, len(found))
    return dict(sorted(found.items()))


def plain_rose(rank):
    size = 2 * rank
    sigma = tuple((h + 1) % size for h in range(size))
    alpha = tuple(h + 1 if h % 2 == 0 else h - 1 for h in range(size))
    return PlainGraph(sigma, alpha, 0)


def starting_roses(space, limits=DEFAULT_LIMITS):
    if space.mode == GraphKind.RIBBON:
        return enumerate_roses(*space.params, limits=limits)
    rose = plain_rose(space.rank)
    return {canonical_code(rose, limits=limits): rose}


def chirality_census(classes, limits=DEFAULT_LIMITS):
    """Split ribbon classes into those isomorphic to their mirror image and chiral pairs.

    Returns:
        dict: counts of classes, achiral classes, chiral pairs and classes up to orientation
    """
    achiral = 0
    for code, graph in classes.items():
        if canonical_code(mirror(graph), limits=limits) == code:
            achiral += 1
    agnostic = {canonical_code(g, orientation_agnostic=True, limits=limits) for g in classes.values()}
    return {
        "classes": len(classes),
        "achiral": achiral,
        "chiral_pairs": (len(classes) - achiral) // 2,
        "up_to_orientation": len(agnostic),
    }


def expansion_children(graph, k, limits=DEFAULT_LIMITS):
    """Codes and graphs one allowed expansion away from ``graph`` with degree <= k."""
    children = []
    for v in graph.vertices:
        for part in allowed_expansions(graph, v):
            child = expand(graph, part)
            if degree(child) <= k:
                children.append((canonical_code(child, limits=limits), child))
    return children


def _children_task(args):
    graph, k, limits = args
    return expansion_children(graph, k, limits)


def enumerate_vertices(space, k, jobs=1, limits=DEFAULT_LIMITS):
    """All vertex classes of the degree-``k`` complex of ``space``.

    Breadth-first closure of the roses under allowed expansions, deduplicated by canonical
    code. Each level is expanded in code order, and with ``jobs > 1`` the level is spread
    over a process pool; the result does not depend on ``jobs``.

    Args:
        space (GraphSpace): ribbon (g, p) or plain (n)
        k (int): maximal degree
        jobs (int): worker processes
        limits (Limits): caps

    Returns:
        dict[CanonicalCode, RibbonGraph | PlainGraph]: representatives in code order
    """
    if k < 0:
        raise PreconditionError(f"maximal degree must be non-negative, got {k}")
    max_edges = space.rank + min(k, space.max_degree)
    if max_edges > limits.closure_edges:
        raise CapacityError(f"expansion closure is capped at {limits.closure_edges} edges, {space} needs {max_edges}")

    store = dict(starting_roses(space, limits))
    frontier = sorted(store)
    pool = Pool(processes=jobs) if jobs > 1 else None
    try:
        level = 0
        while frontier:
            tasks = [(store[code], k, limits) for code in frontier]
            results = pool.map(_children_task, tasks) if pool else [_children_task(t) for t in tasks]
            fresh = {}
            for children in results:
                for code, child in children:
                    if code not in store and code not in fresh:
                        fresh[code] = child
            store.update(fresh)
            frontier = sorted(fresh)
            level += 1
            logger.info("closure %s k=%d level %d: %d new, %d total", space, k, level, len(fresh), len(store))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return dict(sorted(store.items()))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def underlying_multigraphs(rank, k, edge_limit=None):
    """Edge lists of valid basepointed multigraphs of the given rank and degree <= k.

    Vertex 0 is the basepoint. Labelled duplicates are not removed. With ``edge_limit``
    only multigraphs with at most that many edges are produced.
    """
    for vertex_count in range(1, k + 2):
        edge_count = rank + vertex_count - 1
        if edge_limit is not None and edge_count > edge_limit:
            break
        slots = [(u, v) for u in range(vertex_count) for v in range(u, vertex_count)]
        for edges in combinations_with_replacement(slots, edge_count):
            valence = [0] * vertex_count
            for u, v in edges:
                valence[u] += 1
                valence[v] += 1
            if valence[0] < 2 or any(x < 3 for x in valence[1:]):
                continue
            if sum(x - 2 for x in valence[1:]) > k:
                continue
            yield vertex_count, edges


def _half_edge_layout(vertex_count, edges):
    at = [[] for _ in range(vertex_count)]
    for t, (u, v) in enumerate(edges):
        at[u].append(2 * t)
        at[v].append(2 * t + 1)
    pairs = [(2 * t, 2 * t + 1) for t in range(len(edges))]
    return at, pairs


def _build(at, pairs, plain):
    size = 2 * len(pairs)
    sigma = [0] * size
    alpha = [0] * size
    for rot in at:
        for i, h in enumerate(rot):
            sigma[h] = rot[(i + 1) % len(rot)]
    for a, b in pairs:
        alpha[a], alpha[b] = b, a
    cls = PlainGraph if plain else RibbonGraph
    try:
        return cls(tuple(sigma), tuple(alpha), min(at[0]))
    except ValueError:
        return None


def enumerate_brute_force(space, k, limits=DEFAULT_LIMITS, edge_limit=None):
    """Vertex classes found by trying every rotation system on every valid underlying graph.

    Independent of expansions; used to cross-check ``enumerate_vertices`` on small cases.
    ``edge_limit`` keeps only classes with at most that many edges.
    """
    max_edges = space.rank + k if edge_limit is None else min(space.rank + k, edge_limit)
    if max_edges > limits.brute_force_edges:
        raise CapacityError(f"brute-force enumeration is capped at {limits.brute_force_edges} edges, got {max_edges}")
    plain = space.mode == GraphKind.PLAIN
    found = {}
    for vertex_count, edges in underlying_multigraphs(space.rank, k, edge_limit):
        at, pairs = _half_edge_layout(vertex_count, edges)
        if plain:
            rotations = [at]
        else:
            per_vertex = [[(rot[0],) + rest for rest in permutations(rot[1:])] for rot in at]
            rotations = product(*per_vertex)
        for choice in rotations:
            graph = _build(list(choice), pairs, plain)
            if graph is None or not is_valid(graph):
                continue
            if not plain and surface_type(graph) != space.surface:
                continue
            found.setdefault(canonical_code(graph, limits=limits), graph)
    logger.info("brute force %s k=%d: %d classes", space, k, len(found))
    return dict(sorted(found.items()))
