"""Tests for canonical codes, isomorphism and automorphisms."""

import random
from itertools import combinations

import pytest
from conftest import make_double_edge_with_loop as _make_double_edge_with_loop
from conftest import make_rose as _make_rose
from conftest import make_theta as _make_theta
from conftest import make_worked_example as _make_worked_example
from conftest import random_relabel as _random_relabel

from src.canon.codes import (
    CanonicalCode,
    automorphisms,
    brute_force_isomorphic,
    canonical_code,
    canonical_labelling,
    edge_action,
    is_isomorphic,
)
from src.complexes.enumeration import GraphSpace, chirality_census, enumerate_brute_force, enumerate_roses
from src.config import Limits
from src.errors import CapacityError, UsageError
from src.graphs.ribbon import as_plain, mirror, relabel


class TestCanonicalCode:
    def test_invariant_under_relabeling(self):
        rng = random.Random(11)
        for graph in (_make_theta(0), _make_worked_example("both"), _make_double_edge_with_loop("ldld")):
            code = canonical_code(graph)
            for _ in range(25):
                assert canonical_code(_random_relabel(graph, rng)) == code

    def test_theta_orientations_differ(self):
        assert canonical_code(_make_theta(0)) != canonical_code(_make_theta(1))

    def test_worked_example_roses_are_pairwise_distinct(self):
        codes = {canonical_code(_make_worked_example(name)) for name in ("base", "pair", "handle", "both")}
        assert len(codes) == 4

    def test_plain_mode_forgets_cyclic_order(self):
        assert canonical_code(_make_theta(0), mode="plain") == canonical_code(_make_theta(1), mode="plain")

    def test_ribbon_mode_on_plain_graph_is_a_usage_error(self):
        with pytest.raises(UsageError):
            canonical_code(_make_theta(plain=True), mode="ribbon")

    def test_codes_are_totally_ordered(self):
        codes = sorted(canonical_code(_make_rose(w)) for w in ("abab", "aabb", "abcabc"))
        assert codes[0] <= codes[1] <= codes[2]

    def test_parse_round_trip(self):
        code = canonical_code(_make_worked_example())
        assert CanonicalCode.parse("ribbon", str(code)) == code

    def test_plain_cap(self):
        with pytest.raises(CapacityError):
            canonical_code(as_plain(_make_worked_example()), limits=Limits(canon_edges=4))

    def test_canonical_labelling_gives_identical_values(self):
        rng = random.Random(3)
        graph = _make_worked_example("handle")
        other = _random_relabel(graph, rng)

        def normal_form(g):
            perm = [0] * g.half_edge_count
            for i, h in enumerate(canonical_labelling(g)):
                perm[h] = i
            return relabel(g, perm)

        assert normal_form(graph) == normal_form(other)


class TestIsomorphism:
    def test_basepoint_is_respected(self):
        graph = _make_double_edge_with_loop()
        moved = type(graph)(graph.sigma, graph.alpha, 1)
        assert not is_isomorphic(graph, moved)

    def test_kinds_must_match(self):
        with pytest.raises(UsageError):
            is_isomorphic(_make_theta(), _make_theta(plain=True))

    @pytest.mark.parametrize(
        "space",
        [GraphSpace.ribbon(g, p) for g, p in [(0, 2), (0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (2, 1)]]
        + [GraphSpace.plain(n) for n in range(1, 5)],
        ids=str,
    )
    def test_agrees_with_brute_force_up_to_four_edges(self, space):
        rng = random.Random(5)
        classes = list(enumerate_brute_force(space, space.max_degree, edge_limit=4).values())
        assert classes
        assert all(graph.edge_count <= 4 for graph in classes)
        for a, b in combinations(classes, 2):
            assert not brute_force_isomorphic(a, b)
        for graph in classes:
            assert brute_force_isomorphic(graph, _random_relabel(graph, rng))


class TestAutomorphisms:
    def test_theta_sphere_has_rotation_group(self):
        assert len(automorphisms(_make_theta(0))) == 3

    def test_rose_groups(self):
        assert len(automorphisms(_make_rose("abab"))) == 4
        assert len(automorphisms(_make_rose("aabb"))) == 2

    def test_identity_included(self):
        graph = _make_worked_example()
        assert tuple(range(graph.half_edge_count)) in automorphisms(graph)

    def test_plain_group_permutes_parallel_edges(self):
        assert len(automorphisms(_make_theta(plain=True))) == 6

    def test_plain_group_flips_loops(self):
        assert len(automorphisms(as_plain(_make_rose("aabb")))) == 8

    def test_edge_action_of_theta(self):
        actions = edge_action(_make_theta(0))
        assert len(actions) == 3
        assert {tuple(sorted(a.values())) for a in actions} == {(0, 2, 4)}

    def test_edge_action_skips_loops(self):
        actions = edge_action(_make_double_edge_with_loop())
        assert all(set(a) == {0, 2} for a in actions)


class TestChirality:
    def test_mirror_agnostic_code(self):
        graph = _make_worked_example("both")
        assert canonical_code(graph, orientation_agnostic=True) == canonical_code(
            mirror(graph), orientation_agnostic=True
        )

    def test_census_counts_are_consistent(self):
        census = chirality_census(enumerate_roses(1, 2))
        assert census["classes"] == census["achiral"] + 2 * census["chiral_pairs"]
        assert census["up_to_orientation"] == census["achiral"] + census["chiral_pairs"]

    def test_single_loop_rose_is_achiral(self):
        census = chirality_census(enumerate_roses(0, 2))
        assert census == {"classes": 1, "achiral": 1, "chiral_pairs": 0, "up_to_orientation": 1}
