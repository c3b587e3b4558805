"""
Pydantic schemas for input documents.

A document declares a field, named definitions (algebras, coalgebras, homs, modules,
corings, entwinings, categories, functors, category modules), named certificates and
a list of tasks. Matrices are nested arrays of scalar strings ("3/4", "-1", "2") or ints.
"""

from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.schemas.report import Expectation

ScalarText = Union[int, str]
MatrixRows = List[List[ScalarText]]

DefinitionType = Literal[
    "algebra",
    "coalgebra",
    "hom",
    "module",
    "comodule",
    "coring",
    "entwining",
    "category",
    "functor",
    "cat-module",
]

CertificateType = Literal[
    "retraction",
    "sep-idempotent",
    "grouplike",
    "theta",
    "zeta",
    "ext-alpha",
    "res-gamma",
]

TaskKind = Literal[
    "check-algebra",
    "check-hom",
    "check-coalgebra",
    "check-module",
    "check-comodule",
    "check-coring",
    "check-entwining",
    "check-category",
    "check-functor",
    "check-cat-module",
    "find-homs",
    "find-retractions",
    "verify-retraction",
    "verify-retraction-ideal",
    "solve-retraction",
    "verify-idempotent",
    "solve-idempotent",
    "induce-delta",
    "sweedler",
    "find-grouplike",
    "verify-grouplike",
    "cross-check-sweedler",
    "verify-theta",
    "solve-theta",
    "verify-zeta",
    "solve-zeta",
    "check-omega",
    "check-lambda",
    "naturality-theta",
    "naturality-zeta",
    "check-ext",
    "solve-ext",
    "check-res",
    "solve-res",
]

SOLVER_KINDS = frozenset(
    {
        "find-homs",
        "find-retractions",
        "solve-retraction",
        "solve-idempotent",
        "sweedler",
        "find-grouplike",
        "solve-theta",
        "solve-zeta",
        "solve-ext",
        "solve-res",
    }
)


class Definition(BaseModel):
    """
    Schema for one named structure.

    Either `builtin` (a catalog builder with `args`) or the explicit fields of its type.
    Keys of per-object tables are object names joined by commas ("a,b" for hom(a, b)).
    """

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"type": "algebra", "builtin": "matrix", "args": {"n": 2}}},
    )

    type: DefinitionType = Field(..., description="Kind of structure")
    builtin: Optional[str] = Field(None, description="Catalog builder name")
    args: Optional[Dict[str, Any]] = Field(None, description="Builder arguments; strings may name other definitions")

    basis: Optional[List[str]] = Field(None, description="Basis labels; the dimension is their number")
    dim: Optional[int] = Field(None, ge=0, description="Dimension when no labels are given")
    mult: Optional[MatrixRows] = Field(None, description="Multiplication A⊗A -> A")
    unit: Optional[List[ScalarText]] = Field(None, description="Coordinates of 1_A")
    comult: Optional[MatrixRows] = Field(None, description="Comultiplication C -> C⊗C")
    counit: Optional[MatrixRows] = Field(None, description="Counit C -> k, or C -> A for a coring")
    matrix: Optional[MatrixRows] = Field(None, description="Matrix of a linear map (codomain x domain)")
    action: Optional[MatrixRows] = Field(None, description="Module action M⊗A -> M or A⊗N -> N")
    left_action: Optional[MatrixRows] = Field(None, description="Left action of a bimodule or coring")
    right_action: Optional[MatrixRows] = Field(None, description="Right action of a bimodule or coring")
    coaction: Optional[MatrixRows] = Field(None, description="Comodule coaction N -> N⊗C")
    psi: Optional[MatrixRows] = Field(None, description="Entwining map C⊗A -> A⊗C")

    source: Optional[str] = Field(None, description="Source definition of a hom or functor")
    target: Optional[str] = Field(None, description="Target definition of a hom or functor")
    algebra: Optional[str] = Field(None, description="Algebra of a module, coring or entwining")
    coalgebra: Optional[str] = Field(None, description="Coalgebra of a comodule or entwining")
    category: Optional[str] = Field(None, description="Category of a category module")
    side: Optional[Literal["left", "right", "bimodule"]] = Field(None, description="Module side")

    objects: Optional[List[str]] = Field(None, description="Category objects in order")
    homs: Optional[Dict[str, int]] = Field(None, description="'a,b' -> dim hom(a, b)")
    compose: Optional[Dict[str, MatrixRows]] = Field(None, description="'a,b,c' -> hom(b,c)⊗hom(a,b) -> hom(a,c)")
    identities: Optional[Dict[str, List[ScalarText]]] = Field(None, description="'a' -> coordinates of 1_a")
    object_map: Optional[Dict[str, str]] = Field(None, description="Functor on objects")
    hom_maps: Optional[Dict[str, MatrixRows]] = Field(None, description="'a,b' -> functor on hom(a, b)")
    values: Optional[Dict[str, int]] = Field(None, description="'a' -> dim M(a) of a category module")
    actions: Optional[Dict[str, MatrixRows]] = Field(None, description="'a,b' -> action of a category module")

    @model_validator(mode="after")
    def builtin_or_explicit(self) -> "Definition":
        if self.args is not None and self.builtin is None:
            raise ValueError("args given without builtin")
        return self


class Certificate(BaseModel):
    """Schema for one named certificate (candidate witness)."""

    model_config = ConfigDict(extra="forbid")

    type: CertificateType = Field(..., description="Kind of certificate")
    phi: Optional[str] = Field(None, description="The map or functor φ")
    psi: Optional[str] = Field(None, description="The map or functor ψ (retractions, ext certificates)")
    xi: Optional[str] = Field(None, description="The map or functor ξ (idempotents, res certificates)")
    coring: Optional[str] = Field(None, description="Coring of a grouplike")
    entwining: Optional[str] = Field(None, description="Entwining of θ or ζ")
    matrix: Optional[MatrixRows] = Field(None, description="Matrix of α, θ or ζ")
    vector: Optional[List[ScalarText]] = Field(None, description="Coordinates of an idempotent or grouplike")
    components: Optional[Dict[str, MatrixRows]] = Field(None, description="'a,b' -> α_{a,b}")
    elements: Optional[Dict[str, List[ScalarText]]] = Field(None, description="'a' -> coordinates of Γ_a")
    coordinates: Optional[Literal["quotient", "ambient"]] = Field(
        None, description="Whether vectors are given in the quotient basis (default) or the ambient tensor basis"
    )


class TaskSpec(BaseModel):
    """Schema for one task: a checker or solver applied to named definitions."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1, description="Task name, unique in the document")
    kind: TaskKind = Field(..., description="Checker or solver to run")
    target: Optional[str] = Field(None, description="Definition or certificate the task acts on")
    args: Optional[Dict[str, Any]] = Field(None, description="Further named inputs (phi, xi, psi, source, modules)")
    limit: Optional[int] = Field(None, ge=0, description="Solver candidate limit")
    expect: Optional[Expectation] = Field(None, description="Expected outcome")

    @field_validator("name")
    @classmethod
    def validate_not_empty(cls, v: str) -> str:
        """Validate that the name is not whitespace only."""
        if not v.strip():
            raise ValueError("Task name cannot be empty or whitespace only")
        return v.strip()


class SpecDocument(BaseModel):
    """Schema for a complete input document."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "field": "GF(2)",
                "definitions": {
                    "M2": {"type": "algebra", "builtin": "matrix", "args": {"n": 2}},
                    "i": {"type": "hom", "builtin": "unit", "args": {"algebra": "M2"}},
                    "id": {"type": "hom", "builtin": "identity", "args": {"algebra": "M2"}},
                },
                "tasks": [
                    {
                        "name": "no heavy idempotent in M2",
                        "kind": "solve-idempotent",
                        "args": {"phi": "i", "xi": "id"},
                        "expect": "empty",
                    }
                ],
            }
        },
    )

    field: str = Field(..., description='"Q" or "GF(p)"')
    definitions: Dict[str, Definition] = Field(default_factory=dict, description="Named structures")
    certificates: Dict[str, Certificate] = Field(default_factory=dict, description="Named certificates")
    tasks: List[TaskSpec] = Field(default_factory=list, description="Tasks, run in order")

    @model_validator(mode="after")
    def names_unique(self) -> "SpecDocument":
        clash = sorted(set(self.definitions) & set(self.certificates))
        if clash:
            raise ValueError(f"names used for both definitions and certificates: {clash}")
        names = [t.name for t in self.tasks]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"duplicate task names: {duplicates}")
        return self
