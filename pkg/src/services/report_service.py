"""
Helpers that turn map comparisons into tagged ConditionResults and Reports.

Checkers never raise on mathematical failure; they compare two parallel linear maps
and record the first differing basis vectors as witnesses.
"""

import logging
from typing import Callable, List, Optional, Sequence

from src.config import settings
from src.schemas.report import ConditionResult, Report, Witness
from src.utils.exactla import Field, Scalar
from src.utils.findim import BasedSpace, LinMap, first_difference

logger = logging.getLogger(__name__)

Describe = Callable[[Sequence[int]], str]


class AxiomFailure(Exception):
    """Exception raised when a structure built by the package fails its own axioms."""

    def __init__(self, message: str, report: Report):
        super().__init__(f"{message}: failed conditions {report.failed_tags()}")
        self.report = report


def format_vector(field: Field, vector: Sequence[Scalar]) -> List[str]:
    """
    Render exact coordinates as strings.

    Examples:
        >>> from fractions import Fraction
        >>> format_vector(Field.rational(), (Fraction(3, 4), Fraction(-1)))
        ['3/4', '-1']
    """
    return [field.format(v) for v in vector]


def compare_maps(
    tag: str,
    lhs: LinMap,
    rhs: LinMap,
    describe: Optional[Describe] = None,
    prefix: Sequence[int] = (),
) -> ConditionResult:
    """
    Compare two parallel maps column by column.

    Args:
        tag: Condition tag
        lhs: Left-hand side
        rhs: Right-hand side
        describe: Renders a decoded basis location for the witness detail
        prefix: Indices prepended to every witness location (e.g. object or test-module index)

    Returns:
        ConditionResult: Passing, or failing with up to MAX_WITNESSES witnesses
    """
    differences = first_difference(lhs, rhs, limit=settings.MAX_WITNESSES)
    if not differences:
        return ConditionResult(tag=tag, passed=True)
    field = lhs.field
    witnesses = []
    for d in differences:
        location = list(prefix) + list(d.location)
        detail = describe(d.location) if describe else f"basis {tuple(d.location)}"
        witnesses.append(
            Witness(location=location, detail=detail, lhs=format_vector(field, d.lhs), rhs=format_vector(field, d.rhs))
        )
    logger.debug(f"{tag}: {len(witnesses)} witness(es), first at {witnesses[0].location}")
    return ConditionResult(tag=tag, passed=False, witnesses=witnesses)


def compare_vectors(
    tag: str,
    field: Field,
    lhs: Sequence[Scalar],
    rhs: Sequence[Scalar],
    location: Sequence[int] = (),
    detail: str = "",
) -> ConditionResult:
    if tuple(lhs) == tuple(rhs):
        return ConditionResult(tag=tag, passed=True)
    witness = Witness(
        location=list(location),
        detail=detail or "values differ",
        lhs=format_vector(field, lhs),
        rhs=format_vector(field, rhs),
    )
    return ConditionResult(tag=tag, passed=False, witnesses=[witness])


def failure(tag: str, detail: str, location: Sequence[int] = ()) -> ConditionResult:
    return ConditionResult(tag=tag, passed=False, witnesses=[Witness(location=list(location), detail=detail)])


def combine(tag: str, results: Sequence[ConditionResult]) -> ConditionResult:
    """Merge several results for the same condition into one (witnesses concatenated, capped)."""
    witnesses = [w for r in results for w in r.witnesses][: settings.MAX_WITNESSES]
    return ConditionResult(tag=tag, passed=all(r.passed for r in results), witnesses=witnesses)


def solver_report(kind: str, field: Field, solutions: Sequence[Sequence[Scalar]], notes: Sequence[str] = ()) -> Report:
    """Report for a solver: outcome "empty"/"nonempty", verdict pass until an expectation is applied."""
    outcome = "nonempty" if solutions else "empty"
    return Report(
        kind=kind,
        verdict="pass",
        outcome=outcome,
        solutions=[format_vector(field, s) for s in solutions],
        notes=list(notes),
    )


def apply_expectation(report: Report, expect: Optional[str]) -> Report:
    """
    Set the verdict from the expectation.

    Without an expectation, checkers keep their own verdict and solvers pass.
    A mismatch adds an "expect" condition carrying the witness.
    """
    if expect is None:
        return report
    outcome = report.outcome or report.verdict
    if expect == outcome:
        return report.model_copy(update={"verdict": "pass", "expect": expect})
    found = len(report.solutions) if report.solutions is not None else None
    detail = f"expected {expect}, got {outcome}"
    if found is not None:
        detail += f" ({found} solution(s))"
    logger.warning(f"Task {report.task or report.kind!r}: {detail}")
    conditions = list(report.conditions) + [failure("expect", detail)]
    return report.model_copy(update={"verdict": "fail", "expect": expect, "conditions": conditions})


def describe_basis(*spaces: BasedSpace) -> Describe:
    """Witness describer naming each tensor factor's basis vector, e.g. "E12 ⊗ E21"."""

    def describe(location: Sequence[int]) -> str:
        if len(location) != len(spaces):
            return f"basis {tuple(location)}"
        return " ⊗ ".join(s.label(i) for s, i in zip(spaces, location))

    return describe


def prefixed(result: ConditionResult, prefix: Sequence[int], tag: Optional[str] = None) -> ConditionResult:
    """Copy of result with prefix prepended to every witness location (and optionally a new tag)."""
    witnesses = [w.model_copy(update={"location": list(prefix) + list(w.location)}) for w in result.witnesses]
    return result.model_copy(update={"tag": tag or result.tag, "witnesses": witnesses})
