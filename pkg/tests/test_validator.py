"""Tests for the validity rules."""

import pytest
from conftest import make_bivalent as _make_bivalent
from conftest import make_bridged_roses as _make_bridged_roses
from conftest import make_double_edge_with_loop as _make_double_edge_with_loop
from conftest import make_rose as _make_rose
from conftest import make_theta as _make_theta

from src.data.validator import Profile, bridges, is_valid, validate
from src.errors import UsageError, ValidityError
from src.graphs.ribbon import as_plain


class TestValidate:
    def test_rose_passes(self):
        report = validate(_make_rose("abab"))
        assert report.is_valid
        assert report.as_tuple() == (True, set())

    def test_every_rule_reported(self):
        names = [r.name for r in validate(_make_theta()).rules]
        assert names == ["connected", "valence", "basepoint-valence", "separating-edge"]

    def test_separating_edge_fails(self):
        valid, failed = validate(_make_bridged_roses()).as_tuple()
        assert not valid
        assert failed == {"separating-edge"}

    def test_bivalent_vertex_fails_valence(self):
        report = validate(_make_bivalent())
        assert report.as_tuple() == (False, {"valence"})
        assert "valence 2" in report.failures[0].detail

    def test_loops_and_multi_edges_allowed(self):
        assert is_valid(_make_double_edge_with_loop("ddll"))

    def test_raise_for_failures(self):
        with pytest.raises(ValidityError, match="separating-edge"):
            validate(_make_bridged_roses()).raise_for_failures()

    def test_auter_profile_accepts_plain_graphs(self):
        assert validate(as_plain(_make_theta()), Profile.AUTER_SPACE).is_valid

    def test_ribbon_profile_rejects_plain_graphs(self):
        with pytest.raises(UsageError):
            validate(as_plain(_make_theta()), "ribbon-space")


class TestBridges:
    def test_loops_are_never_bridges(self):
        assert bridges(_make_rose("aa")) == ()

    def test_parallel_edges_are_not_bridges(self):
        assert bridges(_make_theta()) == ()

    def test_joining_edge_is_a_bridge(self):
        assert bridges(_make_bridged_roses()) == (4,)
