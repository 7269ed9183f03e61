"""Tests for forest flags and quotient degree complexes."""

import pytest
from conftest import make_split_example as _make_split_example
from conftest import make_theta as _make_theta

from src.complexes.enumeration import GraphSpace, enumerate_roses
from src.complexes.quotient import ForestFlag, build_quotient_complex, forest_chains, orbit_representative
from src.config import reference_f_vector
from src.graphs.moves import enumerate_forests


class TestForestChains:
    def test_theta_has_only_single_edges(self):
        chains = forest_chains(enumerate_forests(_make_theta()))
        assert [len(c) for c in chains] == [1, 1, 1]

    def test_nested_forests_give_two_step_chains(self):
        chains = forest_chains(enumerate_forests(_make_split_example().graph))
        assert len(chains) == 9
        assert (frozenset({4}), frozenset({0, 4})) in chains
        assert (frozenset({0}), frozenset({2, 4})) not in chains

    def test_orbit_representative_takes_smallest_image(self):
        actions = [{0: 0, 2: 2, 4: 4}, {0: 2, 2: 4, 4: 0}, {0: 4, 2: 0, 4: 2}]
        assert orbit_representative([frozenset({4})], actions) == ((0,),)

    def test_flag_dimension(self):
        assert ForestFlag(None, ((0,), (0, 4))).dimension == 2


class TestBuildQuotientComplex:
    def test_genus_two_one_puncture(self):
        # The published table lists 27 110 63; the rules here give a larger vertex set.
        summary = build_quotient_complex(GraphSpace.ribbon(2, 1), 2)
        assert summary.f_vector == (33, 202, 189)
        assert summary.f_vector != reference_f_vector("ribbon", (2, 1), 2)
        assert summary.connected
        assert summary.euler == 33 - 202 + 189

    def test_genus_two_one_puncture_vertex_profile(self):
        summary = build_quotient_complex(GraphSpace.ribbon(2, 1), 2)
        assert dict(summary.vertex_profile) == {(1, 0): 4, (2, 1): 7, (2, 2): 7, (3, 2): 15}
        assert sum(count for _, count in summary.vertex_profile) == summary.f_vector[0]

    @pytest.mark.parametrize("rank", [4, 5])
    def test_plain_rank_at_degree_two(self, rank):
        summary = build_quotient_complex(GraphSpace.plain(rank), 2)
        assert summary.f_vector == (7, 13, 7)
        assert summary.connected

    def test_degree_zero_is_the_rose_set(self):
        roses = enumerate_roses(2, 1)
        summary = build_quotient_complex(GraphSpace.ribbon(2, 1), 0)
        assert summary.f_vector == (len(roses),)
        assert summary.connected == (len(roses) == 1)

    def test_cells_match_f_vector(self):
        summary = build_quotient_complex(GraphSpace.ribbon(1, 2), 2)
        for dim, count in enumerate(summary.f_vector):
            assert len(summary.cells_of_dimension(dim)) == count

    def test_top_cells_have_full_flags(self):
        summary = build_quotient_complex(GraphSpace.ribbon(0, 3), 2)
        for cell in summary.cells_of_dimension(2):
            sizes = [len(f) for f in cell.forests]
            assert sizes == sorted(sizes)
            assert len(set(sizes)) == len(sizes)
