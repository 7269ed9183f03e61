"""Quotient degree complexes as orbit cells of forest flags."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from ..canon.codes import CanonicalCode, canonical_code, edge_action
from ..config import DEFAULT_LIMITS
from ..data.validator import is_valid
from ..errors import ConsistencyError
from ..graphs.moves import collapse_forest, enumerate_forests
from ..graphs.ribbon import degree
from .enumeration import GraphSpace, enumerate_vertices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForestFlag:
    """Strictly nested forests ``F1 < F2 < ... < Fj`` of a host class.

    With its host it stands for the chain host > host/F1 > ... > host/Fj, a j-simplex.
    """

    host: CanonicalCode
    forests: tuple[tuple[int, ...], ...]

    @property
    def dimension(self):
        return len(self.forests)


@dataclass(frozen=True)
class QuotientComplexSummary:
    space: GraphSpace
    k: int
    f_vector: tuple[int, ...]
    connected: bool
    vertex_profile: tuple[tuple[tuple[int, int], int], ...]
    cells: tuple[ForestFlag, ...] = field(repr=False)

    @property
    def euler(self):
        return sum((-1) ** j * count for j, count in enumerate(self.f_vector))

    def cells_of_dimension(self, dim):
        return tuple(c for c in self.cells if c.dimension == dim)


def vertex_profile(graphs):
    """Count graphs by (vertex count, degree), sorted; a fingerprint of a vertex set."""
    counts = Counter((g.vertex_count, degree(g)) for g in graphs)
    return tuple(sorted(counts.items()))


def forest_chains(forests):
    """All strictly increasing chains of the given forests, shortest first."""
    ordered = sorted(forests, key=lambda f: (len(f), sorted(f)))
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for f in ordered:
            if len(f) > len(last) and last < f:
                extend(chain + [f])

    for f in ordered:
        extend([f])
    return chains


def _flag_key(chain):
    return tuple(tuple(sorted(f)) for f in chain)


def orbit_representative(chain, actions):
    """Smallest image of a chain under a list of edge maps (each a dict)."""
    return min(_flag_key([frozenset(act[e] for e in f) for f in chain]) for act in actions)


def build_quotient_complex(space, k, jobs=1, limits=DEFAULT_LIMITS):
    """Orbit cells of the degree-``k`` complex of ``space`` under automorphisms of the hosts.

    Args:
        space (GraphSpace): ribbon (g, p) or plain (n)
        k (int): maximal degree
        jobs (int): worker processes for the vertex enumeration
        limits (Limits): caps

    Returns:
        QuotientComplexSummary: f-vector, cell representatives and 1-skeleton connectivity
    """
    vertices = enumerate_vertices(space, k, jobs=jobs, limits=limits)
    cells = [ForestFlag(code, ()) for code in vertices]
    skeleton = nx.Graph()
    skeleton.add_nodes_from(vertices)
    counts = [len(vertices)] + [0] * k

    for code, host in vertices.items():
        forests = enumerate_forests(host)
        if not forests:
            continue
        for f in forests:
            collapsed = collapse_forest(host, f)
            target = canonical_code(collapsed, limits=limits)
            if target not in vertices or not is_valid(collapsed) or degree(collapsed) > k:
                raise ConsistencyError(f"collapsing {sorted(f)} in {code} leaves the vertex set")
        actions = edge_action(host, limits=limits)
        reps = sorted({orbit_representative(chain, actions) for chain in forest_chains(forests)})
        for rep in reps:
            flag = ForestFlag(code, rep)
            cells.append(flag)
            if flag.dimension > k:
                raise ConsistencyError(f"host {code} carries a flag of dimension {flag.dimension} > {k}")
            counts[flag.dimension] += 1
            if flag.dimension == 1:
                lower = canonical_code(collapse_forest(host, rep[0]), limits=limits)
                skeleton.add_edge(code, lower)
        logger.debug("host %s: %d forests, %d orbit cells", code, len(forests), len(reps))

    summary = QuotientComplexSummary(
        space=space,
        k=k,
        f_vector=tuple(counts),
        connected=nx.is_connected(skeleton),
        vertex_profile=vertex_profile(vertices.values()),
        cells=tuple(sorted(cells, key=lambda c: (c.dimension, c.host, c.forests))),
    )
    logger.info("complex %s k=%d: f-vector %s", space, k, summary.f_vector)
    return summary
