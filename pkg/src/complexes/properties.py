"""Randomized structural checks over the vertex classes of a degree complex."""

import logging

from ..canon.codes import canonical_code
from ..config import DEFAULT_LIMITS
from ..data.validator import RuleResult
from ..graphs.moves import allowed_expansions, collapse_forest, enumerate_forests, expand, new_edge
from ..graphs.ribbon import GraphKind, degree, rank, surface_type
from ..morse.critical import canonical_split, is_canonically_split
from ..morse.metric import random_metric
from .enumeration import enumerate_vertices

logger = logging.getLogger(__name__)


def _collapse_failures(graph, rng):
    forests = enumerate_forests(graph)
    if not forests:
        return []
    forest = rng.choice(forests)
    collapsed = collapse_forest(graph, forest)
    failures = []
    if rank(collapsed) != rank(graph):
        failures.append("rank")
    if degree(collapsed) > degree(graph):
        failures.append("degree")
    if graph.kind == GraphKind.RIBBON and surface_type(collapsed) != surface_type(graph):
        failures.append("surface type")
    return failures


def _expansion_round_trip(graph, rng, limits):
    parts = [part for v in graph.vertices for part in allowed_expansions(graph, v)]
    if not parts:
        return True
    expanded = expand(graph, rng.choice(parts))
    back = collapse_forest(expanded, {new_edge(graph)})
    return canonical_code(back, limits=limits) == canonical_code(graph, limits=limits)


def _split_failures(graph, rng):
    metric = random_metric(graph, rng)
    split = canonical_split(metric)
    failures = []
    if not is_canonically_split(split):
        failures.append("not split")
    if canonical_split(split) != split:
        failures.append("not idempotent")
    if degree(split.graph) > degree(graph):
        failures.append("degree")
    if surface_type(split.graph) != surface_type(graph):
        failures.append("surface type")
    return failures


def run_property_checks(space, k, rng, samples, limits=DEFAULT_LIMITS):
    """Sample vertex classes and check collapse, expansion and splitting invariants.

    Args:
        space (GraphSpace): space whose vertex classes are sampled
        k (int): maximal degree of the sampled classes
        rng (random.Random): seeded source of randomness
        samples (int): number of sampled (graph, forest, expansion, metric) draws
        limits (Limits): caps

    Returns:
        list[RuleResult]: one result per property
    """
    classes = list(enumerate_vertices(space, k, limits=limits).values())
    bad = {"collapse": [], "expand-collapse": [], "canonical-split": []}
    for i in range(samples):
        graph = rng.choice(classes)
        for reason in _collapse_failures(graph, rng):
            bad["collapse"].append(f"sample {i}: {reason}")
        if not _expansion_round_trip(graph, rng, limits):
            bad["expand-collapse"].append(f"sample {i}")
        if graph.kind == GraphKind.RIBBON:
            for reason in _split_failures(graph, rng):
                bad["canonical-split"].append(f"sample {i}: {reason}")
    if space.mode != GraphKind.RIBBON:
        del bad["canonical-split"]
    results = []
    for name, failures in bad.items():
        detail = f"{samples} samples over {len(classes)} classes"
        if failures:
            detail += "; " + ", ".join(failures[:5])
        results.append(RuleResult(name, not failures, detail))
    logger.info("property checks on %s: %d samples", space, samples)
    return results
