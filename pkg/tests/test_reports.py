"""Tests for report output - structured data and format consistency."""

import json
from pathlib import Path

import pytest
import yaml
from conftest import make_loop_metric as _make_loop_metric
from conftest import make_theta as _make_theta
from conftest import make_worked_example as _make_worked_example

from src.complexes.enumeration import GraphSpace, enumerate_roses
from src.complexes.quotient import build_quotient_complex
from src.complexes.witnesses import verify_rose_witnesses
from src.data.graph_file import parse_graph_file, serialize
from src.data.validator import RuleResult
from src.graphs.ribbon import as_plain
from src.pdf.generator import _normalize_headings, export_report_pdf
from src.report.generator import (
    ReportFormat,
    build_analysis_report,
    build_complex_report,
    build_enumeration_report,
    build_graph_report,
    build_selfcheck_report,
    build_witness_report,
    generate_markdown_report,
    generate_text_report,
    render,
)

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "docs" / "schema"

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "boolean": bool,
    "null": type(None),
}


def _conforms(value, schema):
    """Structural subset of JSON Schema: type, enum, const, required, properties, items, oneOf."""
    if "oneOf" in schema:
        return sum(_conforms(value, s) for s in schema["oneOf"]) == 1
    if "enum" in schema and value not in schema["enum"]:
        return False
    if "const" in schema and value != schema["const"]:
        return False
    expected = schema.get("type")
    if expected is not None:
        if expected == "integer" and isinstance(value, bool):
            return False
        if not isinstance(value, _TYPES[expected]):
            return False
    if isinstance(value, dict):
        if any(key not in value for key in schema.get("required", [])):
            return False
        props = schema.get("properties", {})
        if schema.get("additionalProperties") is False and set(value) - set(props):
            return False
        return all(_conforms(value[k], props[k]) for k in value if k in props)
    if isinstance(value, list) and "items" in schema:
        return all(_conforms(item, schema["items"]) for item in value)
    return True


def _schema(name):
    return json.loads((SCHEMA_DIR / name).read_text(encoding="utf-8"))


class TestAnalysisReport:
    def test_ribbon_fields(self):
        data = build_analysis_report(_make_theta(genus=0))
        assert (data["genus"], data["punctures"], data["rank"], data["degree"]) == (0, 3, 2, 1)
        assert data["face_degrees"] == [2, 2, 2]
        assert data["valid"] is True

    def test_plain_graph_has_no_surface(self):
        data = build_analysis_report(as_plain(_make_theta()))
        assert data["kind"] == "plain"
        assert "genus" not in data

    def test_metric_section(self):
        morse = build_analysis_report(_make_loop_metric())["morse"]
        assert morse["heights"] == {"0": "0", "1": "1"}
        assert morse["complexity"] == [2, 2]
        assert morse["codimension"] == 1
        assert morse["epsilon_bound"] == "1/4"
        assert morse["attaching_sets"] == [{"vertex": 1, "members": [4, 5], "negative": 3, "positive": 1}]
        assert morse["attaching_dimension_by_vertex"] == {"1": 2}
        assert [p["point"] for p in morse["critical_points"]] == ["v1", "e4@1/2"]


class TestRendering:
    def test_text(self):
        text = generate_text_report(build_analysis_report(_make_theta(genus=0)))
        lines = text.splitlines()
        assert lines[:2] == ["Graph analysis", "=============="]
        assert "face-degrees: 2 2 2" in lines
        assert "valid: yes" in lines

    def test_text_f_vector(self):
        data = {"title": "Quotient degree complex", "f_vector": [27, 110, 63]}
        assert "f-vector: 27 110 63" in render(data, "text")

    def test_markdown(self):
        md = generate_markdown_report(build_analysis_report(_make_loop_metric()))
        assert md.startswith("# Graph analysis\n")
        assert "## morse" in md
        assert "| point | kind | height | codimension | downward |" in md

    @pytest.mark.parametrize("report_format", list(ReportFormat))
    def test_every_format_ends_with_newline(self, report_format):
        assert render(build_analysis_report(_make_worked_example()), report_format).endswith("\n")

    def test_json_and_yaml_agree(self):
        data = build_analysis_report(_make_loop_metric())
        assert json.loads(render(data, "json")) == yaml.safe_load(render(data, "yaml")) == data

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render({"title": "x"}, "html")


class TestOtherReports:
    def test_enumeration(self):
        roses = enumerate_roses(0, 3)
        data = build_enumeration_report(GraphSpace.ribbon(0, 3), 2, roses, roses_only=True)
        assert (data["title"], data["k"], data["count"]) == ("Rose census", 0, 1)
        assert data["by_degree"] == {"0": 1}

    def test_witnesses(self):
        data = build_witness_report(verify_rose_witnesses(2, 1))
        assert data["count"] == data["expected"] == 4
        assert data["passed"] is True
        assert data["witnesses"][0]["alterations"] == "base"
        word = data["witnesses"][0]["word"].split(" ")
        assert len(word) == 8 and all(token.isdigit() for token in word)

    def test_graph_report_carries_parseable_graph(self):
        metric = _make_loop_metric()
        data = build_graph_report("Forest collapse", metric, {"forest": []})
        assert parse_graph_file(data["graph"]) == metric
        assert data["degree"] == 2

    def test_selfcheck(self):
        data = build_selfcheck_report(7, 3, [RuleResult("collapse", True), RuleResult("expand-collapse", False, "x")])
        assert data["passed"] is False


class TestSchemas:
    def test_complex_summary_conforms(self):
        data = build_complex_report(build_quotient_complex(GraphSpace.ribbon(1, 2), 2))
        schema = _schema("complex_summary.schema.json")
        assert _conforms(data, schema)
        assert _conforms(json.loads(render(data, "json")), schema)

    def test_vertex_profile_counts_every_class(self):
        data = build_complex_report(build_quotient_complex(GraphSpace.ribbon(1, 2), 2))
        assert sum(row["count"] for row in data["vertex_profile"]) == data["f_vector"][0]
        assert data["vertex_profile"][0] == {"vertices": 1, "degree": 0, "count": len(enumerate_roses(1, 2))}

    def test_plain_summary_conforms(self):
        data = build_complex_report(build_quotient_complex(GraphSpace.plain(2), 1))
        assert _conforms(data, _schema("complex_summary.schema.json"))
        assert data["reference_f_vector"] is None

    def test_graph_json_conforms(self):
        schema = _schema("graph.schema.json")
        for value in (_make_theta(), _make_loop_metric(), as_plain(_make_worked_example())):
            assert _conforms(json.loads(serialize(value, format="json")), schema)

    def test_missing_key_detected(self):
        data = build_complex_report(build_quotient_complex(GraphSpace.ribbon(1, 1), 1))
        del data["euler"]
        assert not _conforms(data, _schema("complex_summary.schema.json"))


class TestPdfHeadings:
    def test_skipped_level_clamped(self):
        assert _normalize_headings("# A\n### B\n## C") == "# A\n## B\n## C"

    def test_first_heading_becomes_top_level(self):
        assert _normalize_headings("## A\ntext") == "# A\ntext"

    def test_fenced_graph_comments_untouched(self):
        md = "# Branch slide\n\n## graph\n\n```\n# theta graph\nribbon-graph 1\n```\n### tail"
        assert _normalize_headings(md) == md

    def test_export_sets_document_title(self, monkeypatch, tmp_path):
        created = []

        class _FakePdf:
            def __init__(self, toc_level):
                self.toc_level = toc_level
                self.meta = {}
                self.sections = []
                created.append(self)

            def add_section(self, section):
                self.sections.append(section)

            def save(self, path):
                self.path = path

        monkeypatch.setattr("src.pdf.generator.MarkdownPdf", _FakePdf)
        monkeypatch.setattr("src.pdf.generator.Section", lambda text: text)
        export_report_pdf(build_graph_report("Branch slide", _make_loop_metric()), tmp_path / "slide.pdf")
        (pdf,) = created
        assert pdf.meta["title"] == "Branch slide"
        assert pdf.toc_level == 2
        assert "edge 0 1 len 1" in pdf.sections[0]
        assert pdf.path == str(tmp_path / "slide.pdf")
