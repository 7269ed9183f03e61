"""Basepointed ribbon graphs stored as a pair of permutations on half-edges.

A graph with ``E`` edges has half-edges ``0 .. 2E-1``. ``sigma`` sends a half-edge to the
next one counterclockwise around its vertex, ``alpha`` sends it to the other half of its
edge. A vertex is named by the smallest half-edge of its ``sigma`` cycle and an edge by
the smaller of its two halves.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

from ..errors import ConsistencyError, StructuralError


class GraphKind(StrEnum):
    RIBBON = "ribbon"
    PLAIN = "plain"


def _cycles(perm):
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        h = start
        while not seen[h]:
            seen[h] = True
            cycle.append(h)
            h = perm[h]
        cycles.append(tuple(cycle))
    return cycles


def check_structure(sigma, alpha):
    """Raise StructuralError unless (sigma, alpha) is a connected ribbon graph."""
    size = len(sigma)
    if size == 0 or size % 2:
        raise StructuralError(f"half-edge count must be positive and even, got {size}")
    if len(alpha) != size:
        raise StructuralError(f"sigma has {size} entries but alpha has {len(alpha)}")
    for name, perm in (("sigma", sigma), ("alpha", alpha)):
        if sorted(perm) != list(range(size)):
            raise StructuralError(f"{name} is not a permutation of 0..{size - 1}")
    for h in range(size):
        if alpha[h] == h:
            raise StructuralError(f"half-edge {h} is paired with itself")
        if alpha[alpha[h]] != h:
            raise StructuralError(f"alpha is not an involution at half-edge {h}")
    reached = {0}
    stack = [0]
    while stack:
        h = stack.pop()
        for nxt in (sigma[h], alpha[h]):
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != size:
        raise StructuralError("graph is not connected")


@dataclass(frozen=True)
class RibbonGraph:
    """A connected basepointed ribbon graph.

    Attributes:
        sigma (tuple[int, ...]): rotation; its cycles are the vertices.
        alpha (tuple[int, ...]): fixed-point-free involution pairing edge halves.
        basepoint (int): vertex id (minimal half-edge of the basepoint's sigma cycle).
    """

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    basepoint: int

    kind = GraphKind.RIBBON

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(h) for h in self.sigma))
        object.__setattr__(self, "alpha", tuple(int(h) for h in self.alpha))
        check_structure(self.sigma, self.alpha)
        if self.basepoint not in self.vertices:
            raise StructuralError(f"basepoint {self.basepoint} is not a vertex id")

    @property
    def half_edge_count(self):
        return len(self.sigma)

    @property
    def edge_count(self):
        return len(self.sigma) // 2

    @cached_property
    def _vertex_cycles(self):
        return {cycle[0]: cycle for cycle in _cycles(self.sigma)}

    @cached_property
    def vertices(self):
        return tuple(sorted(self._vertex_cycles))

    @property
    def vertex_count(self):
        return len(self._vertex_cycles)

    @cached_property
    def vertex_of(self):
        """Tuple mapping each half-edge to the id of its vertex."""
        owner = [0] * len(self.sigma)
        for vid, cycle in self._vertex_cycles.items():
            for h in cycle:
                owner[h] = vid
        return tuple(owner)

    @cached_property
    def edges(self):
        """Edge ids (the smaller half of each pair), ascending."""
        return tuple(h for h in range(len(self.alpha)) if h < self.alpha[h])

    def rotation(self, vertex):
        """Half-edges at ``vertex`` in counterclockwise order, starting from the vertex id."""
        try:
            return self._vertex_cycles[vertex]
        except KeyError:
            raise StructuralError(f"{vertex} is not a vertex id") from None

    def rotation_from(self, half_edge):
        """Rotation of the vertex holding ``half_edge``, starting at ``half_edge``."""
        cycle = self.rotation(self.vertex_of[half_edge])
        i = cycle.index(half_edge)
        return cycle[i:] + cycle[:i]

    def valence(self, vertex):
        return len(self.rotation(vertex))

    def edge_of(self, half_edge):
        return min(half_edge, self.alpha[half_edge])

    def endpoints(self, edge):
        return self.vertex_of[edge], self.vertex_of[self.alpha[edge]]

    def is_loop(self, edge):
        u, v = self.endpoints(edge)
        return u == v

    @property
    def non_basepoint_vertices(self):
        return tuple(v for v in self.vertices if v != self.basepoint)


@dataclass(frozen=True)
class PlainGraph(RibbonGraph):
    """A basepointed graph whose cyclic orders carry no information.

    Each sigma cycle is normalized to ascending order on construction, so two values that
    differ only by reordering within vertices compare equal.
    """

    kind = GraphKind.PLAIN

    def __post_init__(self):
        sigma = tuple(int(h) for h in self.sigma)
        check_structure(sigma, tuple(int(h) for h in self.alpha))
        normalized = list(sigma)
        for cycle in _cycles(sigma):
            ordered = sorted(cycle)
            for i, h in enumerate(ordered):
                normalized[h] = ordered[(i + 1) % len(ordered)]
        object.__setattr__(self, "sigma", tuple(normalized))
        super().__post_init__()


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    punctures: int

    @property
    def rank(self):
        return 2 * self.genus + self.punctures - 1

    def __str__(self):
        return f"(g={self.genus}, p={self.punctures})"


@dataclass(frozen=True)
class BoundaryCycle:
    """One face: directed half-edges in traversal order, started at the smallest one."""

    half_edges: tuple[int, ...]

    def __len__(self):
        return len(self.half_edges)


def face_successor(graph, half_edge):
    return graph.sigma[graph.alpha[half_edge]]


def boundary_cycles(graph):
    """Return the boundary cycles of ``graph`` as orbits of ``h -> sigma(alpha(h))``.

    Args:
        graph (RibbonGraph): a valid ribbon graph

    Returns:
        tuple[BoundaryCycle, ...]: faces ordered by their first half-edge
    """
    phi = [face_successor(graph, h) for h in range(graph.half_edge_count)]
    return tuple(BoundaryCycle(cycle) for cycle in _cycles(phi))


def face_degrees(graph):
    """Sorted lengths of the boundary cycles."""
    return tuple(sorted(len(c) for c in boundary_cycles(graph)))


def surface_type(graph):
    """Genus and puncture count of the ribbon surface of ``graph``."""
    punctures = len(boundary_cycles(graph))
    chi = graph.vertex_count - graph.edge_count + punctures
    if chi > 2 or chi % 2:
        raise ConsistencyError(f"Euler characteristic {chi} does not give an integral genus")
    return SurfaceType(genus=(2 - chi) // 2, punctures=punctures)


def rank(graph):
    return graph.edge_count - graph.vertex_count + 1


def degree(graph):
    """Sum of (valence - 2) over the non-basepoint vertices; 0 for a rose."""
    return sum(graph.valence(v) - 2 for v in graph.non_basepoint_vertices)


def relabel(graph, perm):
    """Rename half-edge ``h`` to ``perm[h]``; returns a value of the same kind."""
    size = graph.half_edge_count
    if sorted(perm) != list(range(size)):
        raise StructuralError("relabeling is not a permutation of the half-edges")
    sigma = [0] * size
    alpha = [0] * size
    for h in range(size):
        sigma[perm[h]] = perm[graph.sigma[h]]
        alpha[perm[h]] = perm[graph.alpha[h]]
    basepoint = min(perm[h] for h in graph.rotation(graph.basepoint))
    return type(graph)(tuple(sigma), tuple(alpha), basepoint)


def mirror(graph):
    """Reverse every cyclic order (the orientation-reversed ribbon graph)."""
    inverse = [0] * graph.half_edge_count
    for h, image in enumerate(graph.sigma):
        inverse[image] = h
    return type(graph)(tuple(inverse), graph.alpha, graph.basepoint)


def as_plain(graph):
    return PlainGraph(graph.sigma, graph.alpha, graph.basepoint)


def from_rotations(rotations, pairs, basepoint_index=0, plain=False):
    """Build a graph from explicit vertex rotations and edge pairs.

    Args:
        rotations (Sequence[Sequence[int]]): one counterclockwise list of half-edges per vertex
        pairs (Iterable[tuple[int, int]]): the two halves of each edge
        basepoint_index (int): position of the basepoint in ``rotations``
        plain (bool): build a PlainGraph instead of a RibbonGraph

    Returns:
        RibbonGraph | PlainGraph
    """
    size = sum(len(r) for r in rotations)
    sigma = [-1] * size
    alpha = [-1] * size
    try:
        for rot in rotations:
            for i, h in enumerate(rot):
                if sigma[h] != -1:
                    raise StructuralError(f"half-edge {h} appears in two vertex rotations")
                sigma[h] = rot[(i + 1) % len(rot)]
        for a, b in pairs:
            if alpha[a] != -1 or alpha[b] != -1:
                raise StructuralError(f"half-edge of pair ({a}, {b}) appears in two edges")
            alpha[a], alpha[b] = b, a
    except IndexError:
        raise StructuralError(f"half-edge index out of range 0..{size - 1}") from None
    if not rotations or not rotations[basepoint_index]:
        raise StructuralError("basepoint vertex has no half-edges")
    cls = PlainGraph if plain else RibbonGraph
    return cls(tuple(sigma), tuple(alpha), min(rotations[basepoint_index]))


def rose_from_word(word: Sequence[Hashable]):
    """One-vertex ribbon graph read off a cyclic word in which each loop label occurs twice.

    Position ``k`` of the word is half-edge ``k``; the rotation visits positions in order.
    """
    positions: dict[Hashable, list[int]] = {}
    for k, label in enumerate(word):
        positions.setdefault(label, []).append(k)
    bad = [label for label, pos in positions.items() if len(pos) != 2]
    if bad:
        raise StructuralError(f"loop label {bad[0]!r} must occur exactly twice")
    size = len(word)
    pairs = [tuple(pos) for pos in positions.values()]
    return from_rotations([list(range(size))], pairs)


def rose_from_tokens(tokens: Iterable[str]):
    """Rose from tokens such as ``a1^i a1^t``; the text before ``^`` names the loop."""
    return rose_from_word([token.split("^", 1)[0] for token in tokens])
