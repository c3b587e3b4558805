"""
Unit tests for reports, the comparison helpers and settings.
"""

import json
import logging

import pytest
from pydantic import ValidationError

from src.config import Settings
from src.schemas.report import ConditionResult, Report, Witness
from src.services.report_service import (
    apply_expectation,
    combine,
    compare_maps,
    compare_vectors,
    describe_basis,
    failure,
    prefixed,
    solver_report,
)
from src.utils.findim import BasedSpace, LinMap, tensor_space


class TestReportSchema:
    """Test the Report and ConditionResult validators."""

    def test_failed_condition_needs_witness(self):
        """Test a failing condition without a witness is rejected."""
        with pytest.raises(ValidationError):
            ConditionResult(tag="Eq3", passed=False)

    def test_failed_report_needs_witness(self):
        """Test a failing report without any witness is rejected."""
        with pytest.raises(ValidationError):
            Report(kind="verify-idempotent", verdict="fail", conditions=[ConditionResult(tag="Eq1", passed=True)])

    def test_from_conditions(self):
        """Test the verdict follows the conditions."""
        report = Report.from_conditions("check", [ConditionResult(tag="a", passed=True), failure("b", "broken")])
        assert report.verdict == report.outcome == "fail"
        assert report.failed_tags() == ["b"]
        with pytest.raises(KeyError):
            report.condition("c")

    def test_merge_with_prefix(self):
        """Test merged reports keep order, notes and optionally prefix tags with the kind."""
        first = Report.from_conditions("ret", [ConditionResult(tag="ret1", passed=True)], notes=["n1"])
        second = Report.from_conditions("ideal", [failure("ideal", "no left ideal")], notes=["n2"])
        merged = Report.merge("both", [first, second], prefix=True)
        assert [c.tag for c in merged.conditions] == ["ret:ret1", "ideal:ideal"]
        assert merged.notes == ["n1", "n2"]
        assert merged.verdict == "fail"

    def test_json_round_trip(self):
        """Test a report survives serialization."""
        report = Report.from_conditions("check", [failure("a", "x", location=[1, 2])])
        assert Report.model_validate(json.loads(report.model_dump_json())) == report


class TestComparisons:
    """Test map and vector comparisons."""

    def test_equal_maps_pass(self, q):
        """Test identical maps give a passing condition."""
        v = BasedSpace(2, q)
        assert compare_maps("same", LinMap.identity(v), LinMap.identity(v)).passed

    def test_difference_is_located(self, q):
        """Test the witness names the first differing tensor basis vector."""
        v = BasedSpace(2, q, ("x", "y"))
        vv = tensor_space(v, v)
        lhs = LinMap.identity(vv)
        rhs = LinMap.from_entries(vv, vv, [1 if i == j and i != 2 else 0 for i in range(4) for j in range(4)])
        result = compare_maps("diag", lhs, rhs, describe_basis(v, v), prefix=(7,))
        assert not result.passed
        witness = result.witnesses[0]
        assert witness.location == [7, 1, 0]
        assert witness.detail == "y ⊗ x"
        assert witness.lhs == ["0", "0", "1", "0"]
        assert witness.rhs == ["0", "0", "0", "0"]

    def test_vectors(self, gf3):
        """Test vector comparison reduces nothing and reports both sides."""
        assert compare_vectors("v", gf3, (1, 2), (1, 2)).passed
        result = compare_vectors("v", gf3, (1, 2), (1, 0), location=(3,))
        assert result.witnesses == [Witness(location=[3], detail="values differ", lhs=["1", "2"], rhs=["1", "0"])]

    def test_combine_caps_witnesses(self):
        """Test combining keeps at most MAX_WITNESSES witnesses."""
        results = [failure("t", f"w{i}") for i in range(10)]
        combined = combine("t", results)
        assert not combined.passed
        assert [w.detail for w in combined.witnesses] == ["w0", "w1", "w2", "w3", "w4"]

    def test_prefixed(self):
        """Test prefixing locations and retagging."""
        result = prefixed(failure("a", "x", location=[2]), (0, 1), tag="b")
        assert result.tag == "b"
        assert result.witnesses[0].location == [0, 1, 2]

    def test_describe_mismatched_location(self, q):
        """Test a location of the wrong length falls back to raw indices."""
        describe = describe_basis(BasedSpace(2, q))
        assert describe([0, 1]) == "basis (0, 1)"


class TestExpectations:
    """Test solver reports and expectations."""

    def test_solver_outcome(self, gf2):
        """Test a solver report passes and records its outcome."""
        assert solver_report("s", gf2, []).outcome == "empty"
        report = solver_report("s", gf2, [(1, 0)])
        assert report.outcome == "nonempty"
        assert report.solutions == [["1", "0"]]
        assert report.passed

    def test_matching_expectation(self, gf2):
        """Test a met expectation keeps the report passing."""
        report = apply_expectation(solver_report("s", gf2, []), "empty")
        assert report.passed
        assert report.expect == "empty"

    def test_mismatched_expectation(self, gf2):
        """Test an unmet expectation fails with an expect witness."""
        report = apply_expectation(solver_report("s", gf2, [(1,), (0,)]), "empty")
        assert report.verdict == "fail"
        assert report.condition("expect").witnesses[0].detail == "expected empty, got nonempty (2 solution(s))"

    def test_expected_failure(self):
        """Test a failing checker meets expect fail."""
        report = apply_expectation(Report.from_conditions("check", [failure("a", "x")]), "fail")
        assert report.passed
        assert report.outcome == "fail"

    def test_no_expectation(self):
        """Test the verdict is unchanged without an expectation."""
        report = Report.from_conditions("check", [failure("a", "x")])
        assert apply_expectation(report, None) is report


class TestSettings:
    """Test settings and logging configuration."""

    def test_defaults(self, monkeypatch):
        """Test the documented defaults."""
        for name in ("LOG_LEVEL", "LOG_FORMAT", "ENUMERATION_LIMIT", "MAX_WITNESSES", "OUTPUT_FORMAT"):
            monkeypatch.delenv(f"SEPKIT_{name}", raising=False)
        s = Settings(_env_file=None)
        assert s.ENUMERATION_LIMIT == 10**6
        assert s.MAX_WITNESSES == 5
        assert s.OUTPUT_FORMAT == "table"

    def test_environment_override(self, monkeypatch):
        """Test SEPKIT_ variables override the defaults."""
        monkeypatch.setenv("SEPKIT_ENUMERATION_LIMIT", "42")
        assert Settings(_env_file=None).ENUMERATION_LIMIT == 42

    def test_json_logging(self, capsys):
        """Test the json format writes one JSON object per record to stderr."""
        Settings(_env_file=None).configure_logging(level="INFO", fmt="json")
        logging.getLogger("sepkit.test").info("hello")
        lines = [line for line in capsys.readouterr().err.splitlines() if "hello" in line]
        assert json.loads(lines[-1])["message"] == "hello"
