"""
Pydantic schemas for check and solver reports.

Every checker returns a Report; the CLI serializes Reports verbatim with --json.
"""

from typing import Iterable, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

Verdict = Literal["pass", "fail"]
Expectation = Literal["pass", "fail", "empty", "nonempty"]


class Witness(BaseModel):
    """Schema for one failing instance of a condition."""

    location: List[int] = Field(default_factory=list, description="Basis indices, decoded per tensor factor")
    detail: str = Field("", description="Human-readable description of the failing instance")
    lhs: Optional[List[str]] = Field(None, description="Coordinates of the left-hand side")
    rhs: Optional[List[str]] = Field(None, description="Coordinates of the right-hand side")


class ConditionResult(BaseModel):
    """Schema for the outcome of one tagged condition (e.g. "Eq3", "E4.6", "cond1")."""

    tag: str = Field(..., description="Condition tag")
    passed: bool = Field(..., description="Whether the condition holds")
    witnesses: List[Witness] = Field(default_factory=list, description="Failing instances (at most MAX_WITNESSES)")

    @model_validator(mode="after")
    def failed_condition_has_witness(self) -> "ConditionResult":
        if not self.passed and not self.witnesses:
            raise ValueError(f"failed condition {self.tag!r} must carry at least one witness")
        return self


class Report(BaseModel):
    """
    Schema for the result of a checker, solver or task.

    `outcome` is the mathematical result ("pass"/"fail" for checkers, "empty"/"nonempty"
    for solvers); `verdict` additionally accounts for the task's expectation.
    """

    task: str = Field("", description="Task name")
    kind: str = Field(..., description="Checker or task kind")
    verdict: Verdict = Field(..., description="Overall verdict")
    outcome: Optional[str] = Field(None, description="Raw result before comparing with the expectation")
    conditions: List[ConditionResult] = Field(default_factory=list, description="Per-condition results")
    solutions: Optional[List[List[str]]] = Field(None, description="Coordinate vectors found by a solver")
    expect: Optional[Expectation] = Field(None, description="Expected outcome")
    notes: List[str] = Field(default_factory=list, description="Auxiliary facts (dimensions, kernels)")
    elapsed_ms: Optional[float] = Field(None, description="Wall-clock time in milliseconds")

    @model_validator(mode="after")
    def failed_report_has_witness(self) -> "Report":
        if self.verdict == "fail" and not any(c.witnesses for c in self.conditions):
            raise ValueError("a failing report must carry at least one witness")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def condition(self, tag: str) -> ConditionResult:
        """
        Look up a condition by tag.

        Raises:
            KeyError: No condition with that tag
        """
        for result in self.conditions:
            if result.tag == tag:
                return result
        raise KeyError(tag)

    def failed_tags(self) -> List[str]:
        return [c.tag for c in self.conditions if not c.passed]

    @classmethod
    def from_conditions(cls, kind: str, conditions: Iterable[ConditionResult], **kwargs) -> "Report":
        conditions = list(conditions)
        verdict = "pass" if all(c.passed for c in conditions) else "fail"
        return cls(kind=kind, verdict=verdict, outcome=verdict, conditions=conditions, **kwargs)

    @classmethod
    def merge(cls, kind: str, reports: Iterable["Report"], prefix: bool = False) -> "Report":
        """
        Combine sub-reports into one.

        Args:
            kind: Kind of the combined report
            reports: Reports to combine, in order
            prefix: Prefix each condition tag with its sub-report kind
        """
        conditions: List[ConditionResult] = []
        notes: List[str] = []
        for report in reports:
            for c in report.conditions:
                if prefix:
                    c = c.model_copy(update={"tag": f"{report.kind}:{c.tag}"})
                conditions.append(c)
            notes.extend(report.notes)
        return cls.from_conditions(kind, conditions, notes=notes)

    class Config:
        json_schema_extra = {
            "example": {
                "task": "casimir-m2",
                "kind": "verify-idempotent",
                "verdict": "fail",
                "outcome": "fail",
                "conditions": [
                    {"tag": "Eq1", "passed": True, "witnesses": []},
                    {"tag": "Eq2", "passed": True, "witnesses": []},
                    {
                        "tag": "Eq3",
                        "passed": False,
                        "witnesses": [{"location": [], "detail": "triple tensors differ", "lhs": ["1"], "rhs": ["0"]}],
                    },
                ],
                "expect": "fail",
            }
        }
