"""
Pydantic schemas for input documents and reports.
"""

from src.schemas.document import Certificate, Definition, SpecDocument, TaskSpec
from src.schemas.report import ConditionResult, Report, Witness

__all__ = [
    "SpecDocument",
    "Definition",
    "Certificate",
    "TaskSpec",
    "Report",
    "ConditionResult",
    "Witness",
]
