"""Capacity caps and reference counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final

FILE_FORMAT_VERSION: Final = 1

# Exhaustive rose census iterates (2n-1)!! pairings.
MAX_ROSE_LOOPS: Final = 8
MAX_CLOSURE_EDGES: Final = 12
MAX_CANON_EDGES: Final = 12
MAX_BRUTE_FORCE_EDGES: Final = 6
MAX_AUTOMORPHISMS: Final = 1_000_000
# Witness codes are checked against the rose census only up to this many loops.
CENSUS_CHECK_MAX_LOOPS: Final = 6


@dataclass(frozen=True)
class Limits:
    rose_loops: int = MAX_ROSE_LOOPS
    closure_edges: int = MAX_CLOSURE_EDGES
    canon_edges: int = MAX_CANON_EDGES
    brute_force_edges: int = MAX_BRUTE_FORCE_EDGES
    automorphisms: int = MAX_AUTOMORPHISMS
    census_check_loops: int = CENSUS_CHECK_MAX_LOOPS


DEFAULT_LIMITS: Final = Limits()

# Published f-vectors of quotient degree complexes, keyed by (mode, params, k).
REFERENCE_F_VECTORS: Final[dict[tuple[str, tuple[int, ...], int], tuple[int, ...]]] = {
    ("ribbon", (2, 1), 2): (27, 110, 63),
    ("plain", (4,), 2): (9, 13, 7),
    ("plain", (5,), 2): (9, 13, 7),
}


def reference_f_vector(mode, params, k):
    """Return the published f-vector for a complex, or None when none is on record."""
    return REFERENCE_F_VECTORS.get((str(mode), tuple(params), k))
