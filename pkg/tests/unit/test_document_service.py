"""
Unit tests for document parsing, name resolution and task execution.
"""

import json

import pytest

from src.schemas.document import SpecDocument
from src.services.document_service import SpecError, dump, exit_code, load_spec, parse_spec, run_tasks
from src.utils.exactla import LimitExceeded

M2_DOCUMENT = SpecDocument.model_config["json_schema_extra"]["example"]

PATH_CATEGORY = {
    "type": "category",
    "objects": ["1", "2"],
    "homs": {"1,1": 1, "1,2": 1, "2,2": 1},
    "compose": {"1,1,1": [[1]], "1,1,2": [[1]], "1,2,2": [[1]], "2,2,2": [[1]]},
    "identities": {"1": ["1"], "2": ["1"]},
}


def document(field="GF(2)", definitions=None, certificates=None, tasks=None) -> str:
    return json.dumps(
        {"field": field, "definitions": definitions or {}, "certificates": certificates or {}, "tasks": tasks or []}
    )


def m2_document(tasks, field="GF(2)", certificates=None) -> str:
    definitions = {
        "M2": {"type": "algebra", "builtin": "matrix", "args": {"n": 2}},
        "i": {"type": "hom", "builtin": "unit", "args": {"algebra": "M2"}},
        "id": {"type": "hom", "builtin": "identity", "args": {"algebra": "M2"}},
    }
    return document(field, definitions, certificates, tasks)


def spec_error(text: str) -> SpecError:
    with pytest.raises(SpecError) as info:
        load_spec(text)
    return info.value


class TestLoadSpec:
    """Test validation and the location of errors."""

    def test_example_document(self):
        """Test the schema example loads and runs."""
        (report,) = run_tasks(load_spec(json.dumps(M2_DOCUMENT)))
        assert report.task == "no heavy idempotent in M2"
        assert report.verdict == "pass"
        assert report.outcome == "empty"
        assert report.notes == ["0 solution(s)", "classical Eq1+Eq2: affine dim 3", "dim S⊗_R S = 16"]

    def test_malformed_json(self):
        """Test a JSON syntax error reports line and column."""
        assert spec_error("{").location == "<document>:1:2"

    def test_schema_violation(self):
        """Test a task without a kind is located in the tasks list."""
        error = spec_error(document(tasks=[{"name": "t"}]))
        assert error.location == "tasks.0.kind"

    def test_duplicate_task_names(self):
        """Test task names must be unique."""
        task = {"name": "t", "kind": "check-algebra", "target": "M2"}
        error = spec_error(m2_document([task, task]))
        assert error.location == "document"
        assert "duplicate task names" in error.message

    def test_bad_modulus(self):
        """Test GF(4) is rejected at the field."""
        assert spec_error(document(field="GF(4)")).location == "field"

    def test_unknown_name(self):
        """Test an unresolved task argument names its location."""
        task = {"name": "t", "kind": "solve-idempotent", "args": {"phi": "i", "xi": "nope"}}
        error = spec_error(m2_document([task]))
        assert error.location == "tasks.t.args.xi"
        assert "unknown name 'nope'" in error.message

    def test_wrong_type(self):
        """Test a reference to a definition of the wrong type is rejected."""
        task = {"name": "t", "kind": "check-hom", "target": "M2"}
        error = spec_error(m2_document([task]))
        assert error.location == "tasks.t.target"
        assert "expected a hom" in error.message

    def test_unexpected_argument(self):
        """Test arguments a task kind does not take are rejected."""
        task = {"name": "t", "kind": "check-algebra", "target": "M2", "args": {"zeta": "i"}}
        error = spec_error(m2_document([task]))
        assert error.location == "tasks.t.args"
        assert "zeta" in error.message

    def test_unknown_builtin(self):
        """Test an unknown builtin lists the known ones."""
        error = spec_error(document(definitions={"A": {"type": "algebra", "builtin": "octonions"}}))
        assert error.location == "definitions.A.builtin"
        assert "matrix" in error.message

    def test_bad_builtin_arguments(self):
        """Test a builtin called with the wrong keywords."""
        error = spec_error(document(definitions={"A": {"type": "algebra", "builtin": "matrix", "args": {"m": 2}}}))
        assert error.location == "definitions.A.args"

    def test_matrix_shape(self):
        """Test a multiplication table with too few rows."""
        algebra = {"type": "algebra", "dim": 2, "mult": [[1, 0, 0, 0]], "unit": [1, 0]}
        error = spec_error(document(definitions={"A": algebra}))
        assert error.location == "definitions.A.mult"
        assert "expected 2 rows" in error.message

    def test_circular_reference(self):
        """Test two functors defined through each other."""
        definitions = {
            "f": {"type": "functor", "builtin": "compose", "args": {"first": "g", "second": "g"}},
            "g": {"type": "functor", "builtin": "compose", "args": {"first": "f", "second": "f"}},
        }
        error = spec_error(document(definitions=definitions))
        assert "circular reference through f -> g -> f" in error.message

    def test_missing_file(self, tmp_path):
        """Test an unreadable path is a SpecError."""
        with pytest.raises(SpecError) as info:
            parse_spec(tmp_path / "missing.json")
        assert "cannot read file" in info.value.message

    def test_parse_file_and_dump(self, tmp_path):
        """Test a document survives dump and reload unchanged."""
        path = tmp_path / "m2.json"
        path.write_text(json.dumps(M2_DOCUMENT), encoding="utf-8")
        doc = parse_spec(path)
        assert load_spec(dump(doc)) == doc


class TestRunTasks:
    """Test task execution and expectations."""

    def test_checker_expectations(self):
        """Test a matching expectation passes and a mismatch adds an expect condition."""
        tasks = [
            {"name": "ok", "kind": "check-algebra", "target": "M2", "expect": "pass"},
            {"name": "wrong", "kind": "check-algebra", "target": "M2", "expect": "fail"},
        ]
        ok, wrong = run_tasks(load_spec(m2_document(tasks)))
        assert ok.passed
        assert wrong.verdict == "fail"
        assert wrong.outcome == "pass"
        assert wrong.failed_tags() == ["expect"]
        assert wrong.condition("expect").witnesses[0].detail == "expected fail, got pass"
        assert exit_code([ok, wrong]) == 1
        assert exit_code([ok]) == 0

    def test_failing_checker_expected(self):
        """Test a broken algebra with expect fail passes as a task."""
        algebra = {"type": "algebra", "basis": ["a", "b"], "mult": [[1, 0, 0, 0], [0, 0, 0, 0]], "unit": [1, 0]}
        tasks = [{"name": "broken", "kind": "check-algebra", "target": "A", "expect": "fail"}]
        (report,) = run_tasks(load_spec(document(definitions={"A": algebra}, tasks=tasks)))
        assert report.passed
        assert report.outcome == "fail"
        assert "unit-left" in report.failed_tags()

    def test_kind_filter(self):
        """Test only tasks of the requested kinds run."""
        tasks = [
            {"name": "a", "kind": "check-algebra", "target": "M2"},
            {"name": "h", "kind": "check-hom", "target": "i"},
        ]
        reports = run_tasks(load_spec(m2_document(tasks)), kinds=["check-hom"])
        assert [r.task for r in reports] == ["h"]

    def test_task_limit_wins(self):
        """Test a task limit overrides the run limit."""
        task = {"name": "t", "kind": "solve-idempotent", "args": {"phi": "i", "xi": "id"}, "limit": 4}
        with pytest.raises(LimitExceeded):
            run_tasks(load_spec(m2_document([task])), limit=1000)

    def test_run_limit(self):
        """Test the run limit applies when the task gives none."""
        task = {"name": "t", "kind": "solve-idempotent", "args": {"phi": "i", "xi": "id"}}
        doc = load_spec(m2_document([task]))
        with pytest.raises(LimitExceeded):
            run_tasks(doc, limit=4)
        (report,) = run_tasks(doc, limit=1000)
        assert report.outcome == "empty"

    def test_zero_task_limit(self):
        """Test a task limit of 0 is honoured rather than falling back to the run limit."""
        task = {"name": "t", "kind": "solve-idempotent", "args": {"phi": "i", "xi": "id"}, "limit": 0}
        with pytest.raises(LimitExceeded) as info:
            run_tasks(load_spec(m2_document([task])), limit=1000)
        assert info.value.limit == 0


class TestAlgebraMapInputs:
    """Test homs handed to solvers and certificates must be unital algebra maps."""

    @staticmethod
    def shear_document(tasks, certificates=None) -> str:
        definitions = {
            "K2": {"type": "algebra", "builtin": "diagonal", "args": {"n": 2}},
            "shear": {"type": "hom", "source": "K2", "target": "K2", "matrix": [[1, 1], [0, 1]]},
            "id": {"type": "hom", "builtin": "identity", "args": {"algebra": "K2"}},
        }
        return document(definitions=definitions, certificates=certificates, tasks=tasks)

    def test_sweedler_rejects_non_hom(self):
        """Test the Sweedler task on a linear map that is not multiplicative is an input error."""
        tasks = [{"name": "s", "kind": "sweedler", "target": "shear", "expect": "nonempty"}]
        error = spec_error(self.shear_document(tasks))
        assert error.location == "tasks.s.target"
        assert "not a unital algebra map" in error.message
        assert "hom-mult" in error.message

    def test_solver_argument_rejected(self):
        """Test solve-idempotent checks its phi argument."""
        tasks = [{"name": "t", "kind": "solve-idempotent", "args": {"phi": "shear", "xi": "id"}}]
        assert spec_error(self.shear_document(tasks)).location == "tasks.t.args.phi"

    def test_certificate_rejected(self):
        """Test a separability idempotent over a non-hom is an input error."""
        certificates = {"e": {"type": "sep-idempotent", "phi": "shear", "xi": "id", "vector": [1, 0, 0, 1]}}
        assert spec_error(self.shear_document([], certificates)).location == "certificates.e.phi"

    def test_check_hom_still_reports(self):
        """Test check-hom runs on the same map and reports the failure."""
        tasks = [{"name": "h", "kind": "check-hom", "target": "shear", "expect": "fail"}]
        (report,) = run_tasks(load_spec(self.shear_document(tasks)))
        assert report.passed
        assert report.outcome == "fail"
        assert report.failed_tags() == ["hom-unit", "hom-mult"]

    def test_ambient_casimir(self):
        """Test an idempotent given in S ⊗ S coordinates is projected before checking."""
        vector = ["0"] * 16
        vector[0] = vector[9] = "1"
        certificates = {
            "casimir": {"type": "sep-idempotent", "phi": "i", "xi": "id", "vector": vector, "coordinates": "ambient"}
        }
        tasks = [{"name": "t", "kind": "verify-idempotent", "target": "casimir", "expect": "fail"}]
        (report,) = run_tasks(load_spec(m2_document(tasks, field="Q", certificates=certificates)))
        assert report.passed
        assert report.failed_tags() == ["Eq3"]

    def test_cross_check_sweedler(self):
        """Test Sweedler grouplikes agree with heavy idempotents for the identity of M2."""
        tasks = [{"name": "t", "kind": "cross-check-sweedler", "target": "id"}]
        (report,) = run_tasks(load_spec(m2_document(tasks)))
        assert report.passed
        assert [c.tag for c in report.conditions] == ["sweedler-agree"]
        assert report.notes == ["1 grouplike(s)", "1 idempotent(s)"]

    def test_theta_tasks(self):
        """Test θ = i_A over C = k through verify, omega and solve tasks."""
        definitions = {
            "M2": {"type": "algebra", "builtin": "matrix", "args": {"n": 2}},
            "k": {"type": "coalgebra", "builtin": "trivial"},
            "e": {"type": "entwining", "builtin": "swap", "args": {"algebra": "M2", "coalgebra": "k"}},
        }
        certificates = {"unit": {"type": "theta", "entwining": "e", "matrix": [[1], [0], [0], [1]]}}
        tasks = [
            {"name": "verify", "kind": "verify-theta", "target": "unit", "expect": "pass"},
            {"name": "omega", "kind": "check-omega", "target": "unit"},
            {"name": "solve", "kind": "solve-theta", "target": "e", "expect": "nonempty"},
        ]
        doc = load_spec(document(definitions=definitions, certificates=certificates, tasks=tasks))
        verify, omega, solve = run_tasks(doc)
        assert verify.passed
        assert [c.tag for c in omega.conditions] == ["omega-T1", "omega-T2", "omega-agree"]
        assert omega.passed
        assert solve.solutions == [["1", "0", "0", "1"]]

    def test_explicit_category_tasks(self):
        """Test an explicit path category with its identity functor."""
        definitions = {
            "P": PATH_CATEGORY,
            "id": {"type": "functor", "builtin": "identity", "args": {"category": "P"}},
        }
        tasks = [
            {"name": "category", "kind": "check-category", "target": "P"},
            {"name": "functor", "kind": "check-functor", "target": "id"},
            {"name": "res", "kind": "solve-res", "args": {"phi": "id", "xi": "id"}, "expect": "nonempty"},
        ]
        category, functor, res = run_tasks(load_spec(document(definitions=definitions, tasks=tasks)))
        assert category.passed
        assert functor.passed
        assert res.passed
        assert res.notes == ["1 solution(s)"]

    def test_reports_carry_timing(self):
        """Test each task report records its name, kind and elapsed time."""
        tasks = [{"name": "a", "kind": "check-algebra", "target": "M2"}]
        (report,) = run_tasks(load_spec(m2_document(tasks)))
        assert (report.task, report.kind) == ("a", "check-algebra")
        assert report.elapsed_ms is not None and report.elapsed_ms >= 0
