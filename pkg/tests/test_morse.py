"""Tests for heights, critical structure, canonical splitting and branch slides."""

import random
from fractions import Fraction

import pytest
from conftest import make_double_edge_with_loop as _make_double_edge_with_loop
from conftest import make_loop_metric as _make_loop_metric
from conftest import make_split_example as _make_split_example
from conftest import make_theta as _make_theta
from conftest import make_three_up_two_down as _make_three_up_two_down

from src.canon.codes import is_isomorphic
from src.complexes.enumeration import GraphSpace, enumerate_vertices
from src.errors import AttachingSpaceError, PreconditionError, StructuralError
from src.graphs.moves import collapse_forest
from src.graphs.ribbon import degree, from_rotations, surface_type
from src.morse.attaching import (
    attaching_structure,
    created_edges,
    default_epsilon,
    epsilon_bound,
    epsilon_bounds,
    slide_branch,
    slide_branches,
)
from src.morse.critical import (
    PointKind,
    canonical_split,
    canonical_split_with_forest,
    critical_structure,
    is_canonically_split,
    split_candidates,
)
from src.morse.metric import GraphPoint, collapse_metric, heights, random_metric, with_lengths

EPS = Fraction(1, 8)


class TestMetric:
    def test_lengths_must_be_positive(self):
        with pytest.raises(StructuralError):
            with_lengths(_make_double_edge_with_loop(), [1, 0, 1])

    def test_normalized_lengths_sum_to_one(self):
        metric = with_lengths(_make_double_edge_with_loop(), [1, 2, 3], normalized=True)
        assert metric.total_length == 1
        assert metric.length(4) == Fraction(1, 2)

    def test_collapse_keeps_surviving_lengths(self):
        collapsed = collapse_metric(_make_split_example(), {4})
        assert collapsed.lengths == (Fraction(1, 4),) * 3


class TestHeights:
    def test_vertex_heights(self):
        height = heights(_make_loop_metric())
        assert height[0] == 0
        assert height[1] == 1

    def test_shortest_route_wins(self):
        metric = _make_loop_metric(lengths=(1, 3, 1))
        assert heights(metric)[1] == 1

    def test_loop_apex(self):
        height = heights(_make_loop_metric())
        assert height.at(GraphPoint(4, Fraction(1, 2))) == Fraction(3, 2)
        assert height.at(GraphPoint(0, Fraction(1, 4))) == Fraction(1, 4)

    def test_offset_outside_edge(self):
        with pytest.raises(PreconditionError):
            heights(_make_loop_metric()).at(GraphPoint(0, Fraction(2)))


class TestCriticalStructure:
    def test_double_edge_with_loop(self):
        structure = critical_structure(_make_loop_metric())
        vertex, apex = structure.points
        assert vertex.kind == PointKind.VERTEX
        assert (vertex.vertex, vertex.height, vertex.codimension, vertex.downward) == (1, 1, 1, (1, 3))
        assert apex.kind == PointKind.INTERIOR
        assert apex.point == GraphPoint(4, Fraction(1, 2))
        assert apex.height == Fraction(3, 2)
        assert (structure.extended_complexity, structure.complexity) == (2, 2)
        assert structure.codimension == 1

    def test_branches_from_vertex_reach_basepoint(self):
        structure = critical_structure(_make_loop_metric())
        assert all(not b.ends_at_critical for b in structure.branches_from(0))
        assert len(structure.branches_into(1)) == 2

    def test_three_up_two_down(self):
        structure = critical_structure(_make_three_up_two_down())
        assert structure.critical_vertices == (1,)
        assert structure.cone(1) == (1, 3)
        heights_found = sorted(p.height for p in structure.points)
        assert heights_found == [1, Fraction(5, 4), Fraction(3, 2)]
        assert structure.extended_complexity == 3
        assert structure.complexity == 3

    def test_monotone_edges_carry_no_interior_point(self):
        structure = critical_structure(_make_loop_metric(lengths=(1, 1, 1)))
        assert {p.point.edge for p in structure.points if p.kind == PointKind.INTERIOR} == {4}


class TestCanonicalSplit:
    def test_example_contracts_connecting_edge(self):
        metric = _make_split_example()
        assert split_candidates(metric) == [(5, 5)]
        split, forest = canonical_split_with_forest(metric)
        assert forest == frozenset({4})
        assert is_isomorphic(split.graph, _make_double_edge_with_loop("ddll"))
        assert degree(split.graph) == 2

    def test_split_graph_is_fixed(self):
        metric = _make_loop_metric()
        assert is_canonically_split(metric)
        assert canonical_split(metric) == metric

    def test_idempotent_over_random_metrics(self):
        rng = random.Random(2024)
        graphs = list(enumerate_vertices(GraphSpace.ribbon(1, 2), 2).values())
        for _ in range(60):
            graph = rng.choice(graphs)
            metric = random_metric(graph, rng)
            split = canonical_split(metric)
            assert is_canonically_split(split)
            assert canonical_split(split) == split
            assert surface_type(split.graph) == surface_type(graph)
            assert degree(split.graph) <= degree(graph)
            assert split.total_length == 1

    def test_idempotent_over_a_thousand_genus_two_metrics(self):
        rng = random.Random(7)
        graphs = list(enumerate_vertices(GraphSpace.ribbon(2, 1), 2).values())
        for _ in range(1000):
            graph = rng.choice(graphs)
            split = canonical_split(random_metric(graph, rng))
            assert is_canonically_split(split)
            assert canonical_split(split) == split
            assert surface_type(split.graph) == (2, 1)


class TestEpsilon:
    def test_loop_example_bounds(self):
        metric = _make_loop_metric()
        assert epsilon_bounds(metric) == (Fraction(1, 4), Fraction(1))
        assert epsilon_bound(metric) == Fraction(1, 4)
        assert default_epsilon(metric) == EPS

    def test_three_up_two_down_bound(self):
        assert epsilon_bound(_make_three_up_two_down()) == Fraction(1, 8)

    def test_epsilon_must_be_below_bound(self):
        with pytest.raises(PreconditionError, match="half the minimum"):
            attaching_structure(_make_loop_metric(), Fraction(1, 4))

    def test_epsilon_must_be_positive(self):
        with pytest.raises(PreconditionError):
            attaching_structure(_make_loop_metric(), 0)

    def test_unsplit_graph_rejected(self):
        with pytest.raises(PreconditionError, match="canonically split"):
            attaching_structure(_make_split_example(), Fraction(1, 100))


class TestAttachingStructure:
    def test_single_set_for_consecutive_loop(self):
        structure = attaching_structure(_make_loop_metric("ddll"), EPS)
        (only,) = structure.sets
        assert (only.members, only.negative, only.positive) == ((4, 5), 3, 1)
        assert structure.directions(5) == (3, 1)

    def test_interleaved_loop_gives_two_sets(self):
        structure = attaching_structure(_make_loop_metric("ldld"), EPS)
        assert [(s.members, s.negative, s.positive) for s in structure.sets] == [((5,), 1, 3), ((4,), 3, 1)]

    def test_dimension_matches_extended_branches(self):
        metric = _make_three_up_two_down()
        structure = attaching_structure(metric, Fraction(1, 16))
        (only,) = structure.sets
        assert (only.members, only.negative, only.positive) == ((5, 6, 7), 3, 1)
        assert structure.dimension == critical_structure(metric).extended_complexity

    def test_downward_half_edge_has_no_directions(self):
        with pytest.raises(AttachingSpaceError):
            attaching_structure(_make_loop_metric(), EPS).directions(1)


class TestSlides:
    def test_positive_slide_creates_short_edge(self):
        metric = _make_loop_metric()
        slid = slide_branch(metric, 5, Fraction(1, 16), EPS)
        assert created_edges(metric, slid) == frozenset({6})
        assert slid.length(6) == Fraction(1, 16)
        assert slid.length(0) == Fraction(15, 16)
        assert collapse_forest(slid.graph, {6}) == metric.graph
        assert surface_type(slid.graph) == surface_type(metric.graph)

    def test_negative_slide_of_first_member(self):
        metric = _make_loop_metric()
        slid = slide_branch(metric, 4, -Fraction(1, 16), EPS)
        assert slid.length(2) == Fraction(15, 16)
        assert surface_type(slid.graph) == surface_type(metric.graph)

    def test_zero_target_is_identity(self):
        metric = _make_loop_metric()
        assert slide_branch(metric, 4, 0, EPS) is metric

    def test_order_inside_set_enforced(self):
        metric = _make_loop_metric()
        with pytest.raises(AttachingSpaceError, match="order"):
            slide_branch(metric, 4, Fraction(1, 16), EPS)
        with pytest.raises(AttachingSpaceError, match="order"):
            slide_branches(metric, {4: EPS / 2, 5: -EPS / 2}, EPS)

    def test_target_must_stay_in_cone(self):
        with pytest.raises(AttachingSpaceError, match="outside"):
            slide_branch(_make_loop_metric(), 5, EPS, EPS)

    def test_only_upward_half_edges_slide(self):
        with pytest.raises(AttachingSpaceError):
            slide_branch(_make_loop_metric(), 1, Fraction(1, 16), EPS)

    def test_sliding_every_branch_off_a_vertex_smooths_it(self):
        metric = _make_loop_metric()
        slid = slide_branches(metric, {4: Fraction(1, 16), 5: Fraction(1, 16)}, EPS)
        assert slid.graph == metric.graph
        assert slid.lengths == (Fraction(15, 16), Fraction(17, 16), Fraction(1))
        assert created_edges(metric, slid) == frozenset()

    def test_interleaved_loop_slides_in_either_direction(self):
        metric = _make_loop_metric("ldld")
        for h, y in ((5, Fraction(1, 32)), (5, -Fraction(1, 32)), (4, Fraction(1, 16))):
            slid = slide_branch(metric, h, y, EPS)
            assert surface_type(slid.graph) == surface_type(metric.graph)

    def test_outer_members_slide_both_ways(self):
        metric = _make_three_up_two_down()
        eps = Fraction(1, 16)
        slid = slide_branches(metric, {5: -Fraction(1, 32), 7: Fraction(1, 32)}, eps)
        assert created_edges(metric, slid) == frozenset({8, 10})
        assert slid.length(0) == Fraction(31, 32)
        assert slid.length(2) == Fraction(31, 32)
        assert surface_type(slid.graph) == surface_type(metric.graph)
        assert slid.total_length == metric.total_length
        assert degree(slid.graph) == degree(metric.graph)

    def test_two_depths_into_one_edge_keep_the_lower_created_edge(self):
        metric = _make_loop_metric()
        slid = slide_branches(metric, {4: Fraction(1, 32), 5: Fraction(1, 16)}, EPS)
        assert created_edges(metric, slid) == frozenset({6})
        assert slid.length(6) == Fraction(1, 32)
        assert slid.length(0) == Fraction(15, 16)
        assert slid.length(2) == Fraction(33, 32)
        assert collapse_forest(slid.graph, {6}) == metric.graph


class TestTrivalentSlides:
    def test_theta_slide_moves_length_between_down_edges(self):
        metric = with_lengths(_make_theta(), [1, 1, 2])
        assert default_epsilon(metric) == EPS
        slid = slide_branch(metric, 5, Fraction(1, 16), EPS)
        assert slid.graph == metric.graph
        assert slid.lengths == (Fraction(15, 16), Fraction(17, 16), Fraction(2))
        assert created_edges(metric, slid) == frozenset()

    @pytest.mark.parametrize(
        ("target", "expected"),
        [
            (Fraction(1, 16), (Fraction(15, 16), Fraction(17, 16), Fraction(2), Fraction(1))),
            (-Fraction(1, 16), (Fraction(17, 16), Fraction(15, 16), Fraction(2), Fraction(1))),
        ],
    )
    def test_genus_one_two_punctures_slides_both_ways(self, target, expected):
        graph = from_rotations([[0, 2, 4, 6, 7], [1, 3, 5]], [(0, 1), (2, 3), (4, 5), (6, 7)])
        metric = with_lengths(graph, [1, 1, 2, 1])
        assert surface_type(graph) == (1, 2)
        assert epsilon_bound(metric) == Fraction(1, 4)
        slid = slide_branch(metric, 5, target, default_epsilon(metric))
        assert slid.graph == metric.graph
        assert slid.lengths == expected


class TestSlideSweep:
    @pytest.mark.parametrize(("genus", "punctures"), [(0, 3), (1, 1), (1, 2)])
    def test_single_slides_collapse_back(self, genus, punctures):
        rng = random.Random(genus * 10 + punctures)
        checked = 0
        for graph in enumerate_vertices(GraphSpace.ribbon(genus, punctures), 2).values():
            split = canonical_split(random_metric(graph, rng, normalized=False))
            eps = default_epsilon(split)
            for s in attaching_structure(split, eps).sets:
                for branch, y, down in ((s.members[-1], eps / 2, s.positive), (s.members[0], -eps / 2, s.negative)):
                    slid = slide_branch(split, branch, y, eps)
                    created = created_edges(split, slid)
                    back = collapse_metric(slid, created)
                    assert surface_type(slid.graph) == surface_type(split.graph)
                    assert back.graph == split.graph
                    assert slid.total_length == split.total_length
                    edge = split.graph.edge_of(down)
                    assert slid.length(edge) == split.length(edge) - abs(y)
                    # Away from the slide every length survives the round trip.
                    changed = {e: back.length(e) - split.length(e) for e in split.graph.edges}
                    changed = {e: d for e, d in changed.items() if d}
                    if created:
                        assert changed == {edge: -abs(y)}
                    else:
                        assert len(changed) == 2 and changed[edge] == -abs(y) and sum(changed.values()) == 0
                    checked += 1
        assert checked > 0
