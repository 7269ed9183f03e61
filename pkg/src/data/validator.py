"""Validity rules for the graphs that make up degree complexes."""

from dataclasses import dataclass
from enum import StrEnum

import networkx as nx

from ..errors import UsageError, ValidityError
from ..graphs.ribbon import GraphKind


class Profile(StrEnum):
    RIBBON_SPACE = "ribbon-space"
    AUTER_SPACE = "auter-space"


@dataclass(frozen=True)
class RuleResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidityReport:
    profile: Profile
    rules: tuple[RuleResult, ...]

    @property
    def is_valid(self):
        return all(r.passed for r in self.rules)

    @property
    def failures(self):
        return tuple(r for r in self.rules if not r.passed)

    def as_tuple(self):
        """Return ``(is_valid, failed_rule_names)``."""
        return self.is_valid, {r.name for r in self.failures}

    def raise_for_failures(self):
        if not self.is_valid:
            detail = "; ".join(f"{r.name}: {r.detail}" for r in self.failures)
            raise ValidityError(detail)


def simple_graph(graph):
    """Underlying simple graph with edge multiplicities; loops are dropped."""
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertices)
    for e in graph.edges:
        u, v = graph.endpoints(e)
        if u == v:
            continue
        if simple.has_edge(u, v):
            simple[u][v]["multiplicity"] += 1
            simple[u][v]["ids"].append(e)
        else:
            simple.add_edge(u, v, multiplicity=1, ids=[e])
    return simple


def bridges(graph):
    """Edge ids whose removal disconnects ``graph``.

    Loops and parallel edges are never bridges, so only simple edges of multiplicity one
    that networkx reports as bridges qualify.
    """
    simple = simple_graph(graph)
    found = []
    for u, v in nx.bridges(simple):
        data = simple[u][v]
        if data["multiplicity"] == 1:
            found.append(data["ids"][0])
    return tuple(sorted(found))


def validate(graph, profile=Profile.RIBBON_SPACE):
    """Check a graph against the rules for points of a degree complex.

    Args:
        graph (RibbonGraph | PlainGraph): graph to check
        profile (Profile | str): 'ribbon-space' requires a ribbon value, 'auter-space' accepts either

    Returns:
        ValidityReport: pass/fail for connectivity, valences and separating edges
    """
    profile = Profile(profile)
    if profile == Profile.RIBBON_SPACE and graph.kind != GraphKind.RIBBON:
        raise UsageError("ribbon-space validation needs a ribbon graph, got a plain graph")

    rules = []
    # Values are connected by construction; the rule is reported for completeness.
    rules.append(RuleResult("connected", nx.is_connected(simple_graph(graph))))

    low = [v for v in graph.non_basepoint_vertices if graph.valence(v) < 3]
    rules.append(
        RuleResult(
            "valence",
            not low,
            ", ".join(f"vertex {v} has valence {graph.valence(v)}" for v in low),
        )
    )

    base_valence = graph.valence(graph.basepoint)
    rules.append(
        RuleResult(
            "basepoint-valence",
            base_valence >= 2,
            f"basepoint {graph.basepoint} has valence {base_valence}" if base_valence < 2 else "",
        )
    )

    separating = bridges(graph)
    rules.append(
        RuleResult(
            "separating-edge",
            not separating,
            ", ".join(f"edge {e} is separating" for e in separating),
        )
    )
    return ValidityReport(profile, tuple(rules))


def is_valid(graph):
    """Shorthand used by enumeration code: all rules pass under the matching profile."""
    profile = Profile.RIBBON_SPACE if graph.kind == GraphKind.RIBBON else Profile.AUTER_SPACE
    return validate(graph, profile).is_valid
