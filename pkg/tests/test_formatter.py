"""Tests for sequence, report and analysis formatting."""

import json
from pathlib import Path

import jsonschema
import pytest

import almost_golomb
from almost_golomb.analysis import oscillation_profile
from almost_golomb.automata import compile_dfao, geometric_orbit
from almost_golomb.core_seq import generate_almost_golomb
from almost_golomb.formatter import (
    FormatError,
    bfile_values,
    format_bfile,
    format_bundles_json,
    format_bundles_text,
    format_csv,
    format_json,
    format_meta_csv,
    format_orbit,
    format_oscillation,
    format_sequence,
    format_text,
    format_tsv,
    parse_bfile,
)
from almost_golomb.identities import verify_order
from almost_golomb.meta import meta_structure
from almost_golomb.reports import CheckReport, ReportBundle

SCHEMA_PATH = Path(almost_golomb.__file__).parent / "schemas" / "check_report.schema.json"


@pytest.fixture
def short_seq():
    return generate_almost_golomb(2, 5)


@pytest.fixture
def failing_bundle():
    report = CheckReport("demo", 1, 9, checked=9)
    for index in range(4):
        report.add_violation(index + 1, index, index + 1)
    return ReportBundle("demo suite", [report], ["other: skipped, no index in range"])


class TestSequenceFormats:
    def test_bfile(self, short_seq):
        assert format_bfile(short_seq) == "1 1\n2 2\n3 2\n4 3\n5 4\n"

    def test_csv(self, short_seq):
        assert format_csv(short_seq).splitlines() == ["n,a", "1,1", "2,2", "3,2", "4,3", "5,4"]

    def test_json(self, short_seq):
        data = json.loads(format_json(short_seq))
        assert data == {"family": "almost-golomb", "parameter": 2, "count": 5, "terms": [1, 2, 2, 3, 4]}

    def test_text(self, short_seq):
        assert format_text(short_seq) == "1,2,2,3,4\n"

    @pytest.mark.parametrize("fmt", ["bfile", "csv", "json", "text"])
    def test_dispatch(self, short_seq, fmt):
        assert format_sequence(short_seq, fmt)

    def test_unknown_format(self, short_seq):
        with pytest.raises(FormatError):
            format_sequence(short_seq, "xml")


class TestBfileParsing:
    def test_comments_and_blank_lines(self):
        text = "# A000000\n\n1 1\n2 2\n  3 2  \n"
        assert parse_bfile(text) == [(1, 1), (2, 2), (3, 2)]

    def test_round_trip_of_generated_file(self, short_seq):
        assert bfile_values(parse_bfile(format_bfile(short_seq))) == [1, 2, 2, 3, 4]

    @pytest.mark.parametrize("text", ["1 1 1\n", "1 x\n", "1\n"])
    def test_malformed_lines(self, text):
        with pytest.raises(FormatError):
            parse_bfile(text)

    def test_gap_in_indices(self):
        with pytest.raises(FormatError):
            bfile_values([(1, 1), (3, 2)])


class TestReports:
    def test_json_matches_schema(self, r3_seq):
        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        document = json.loads(format_bundles_json(verify_order(r3_seq), {"order": 3, "count": r3_seq.length}))
        jsonschema.validate(document, schema)
        assert document["pass"] is True

    def test_failing_json_matches_schema(self, failing_bundle):
        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        document = json.loads(format_bundles_json([failing_bundle]))
        jsonschema.validate(document, schema)
        report = document["bundles"][0]["reports"][0]
        assert report["pass"] is False
        assert report["violation_count"] == 4
        assert report["samples"][0] == {"index": 1, "expected": 0, "actual": 1}

    def test_max_samples_trims_output(self, failing_bundle):
        document = json.loads(format_bundles_json([failing_bundle], max_samples=2))
        report = document["bundles"][0]["reports"][0]
        assert len(report["samples"]) == 2
        assert report["violation_count"] == 4

    def test_no_bundles_is_not_a_pass(self):
        assert json.loads(format_bundles_json([]))["pass"] is False

    def test_text_table(self, failing_bundle):
        text = format_bundles_text([failing_bundle], max_samples=1)
        assert "== demo suite: FAIL" in text
        assert "demo at 1: expected 0, found 1" in text
        assert "demo at 2" not in text
        assert "note: other: skipped, no index in range" in text


class TestAnalysisOutput:
    def test_tsv(self):
        assert format_tsv([(1, 0.5), (2, 0.25)], "demo") == "# demo\n1\t0.5\n2\t0.25\n"

    def test_oscillation_blocks(self, r3_seq):
        text = format_oscillation(oscillation_profile(r3_seq, 4))
        upper, lower = text.split("\n\n\n")
        assert upper.startswith("# max")
        assert lower.startswith("# min")
        assert len(lower.strip().splitlines()) == 5

    def test_orbit(self):
        orbit = geometric_orbit(compile_dfao("r5-U"), [1], [], 6)
        text = format_orbit(orbit)
        assert text.startswith(f"preperiod {orbit.preperiod}\nperiod {orbit.period}\n")
        assert "(" in text

    def test_meta_csv(self):
        text = format_meta_csv(meta_structure(5, n_terms=5_000))
        lines = text.splitlines()
        assert lines[0] == "r,M,stabilized,prefix,boundary_run"
        assert lines[2] == "3,3,true,2,3"
