"""
Finite-dimensional algebras given by structure constants, their homomorphisms and modules,
and the ring-level certificates (separability idempotents and retractions).

Types here only check shapes; the algebraic axioms are checked by src.services.algmod_service.
"""

from dataclasses import dataclass, field

from src.utils.exactla import DimensionMismatchError, Field, Vector
from src.utils.findim import BasedSpace, LinMap, tensor_map, tensor_space, tensor_vector, unit_space


@dataclass(frozen=True)
class StructureAlgebra:
    """
    A unital algebra A with multiplication ∇: A ⊗ A -> A and unit vector 1_A.

    Attributes:
        space: Underlying based space
        mult: Multiplication map
        unit: Coordinates of the unit
        name: Display name
    """

    space: BasedSpace
    mult: LinMap
    unit: Vector
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.mult.domain != tensor_space(self.space, self.space) or self.mult.codomain != self.space:
            raise DimensionMismatchError(f"multiplication of {self.name or 'algebra'} must map A⊗A -> A")
        if len(self.unit) != self.space.dim:
            raise DimensionMismatchError(f"unit has length {len(self.unit)}, expected {self.space.dim}")
        object.__setattr__(self, "unit", tuple(self.unit))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def unit_map(self) -> LinMap:
        """i_A: k -> A."""
        return LinMap.from_vector(self.space, self.unit)

    def identity(self) -> LinMap:
        return LinMap.identity(self.space)

    def product(self, x: Vector, y: Vector) -> Vector:
        return self.mult(tensor_vector(self.field, x, y))

    def left_multiplication(self, x: Vector) -> LinMap:
        """L_x: a ↦ x·a."""
        return self.mult @ tensor_map(LinMap.from_vector(self.space, x), self.identity())

    def right_multiplication(self, x: Vector) -> LinMap:
        """R_x: a ↦ a·x."""
        return self.mult @ tensor_map(self.identity(), LinMap.from_vector(self.space, x))


@dataclass(frozen=True)
class AlgebraHom:
    """A linear map between algebras, expected to be a unital algebra homomorphism."""

    source: StructureAlgebra
    target: StructureAlgebra
    map: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.map.domain != self.source.space or self.map.codomain != self.target.space:
            raise DimensionMismatchError(
                f"hom {self.name or ''} must map a {self.source.dim}-dim algebra to a {self.target.dim}-dim algebra"
            )

    def then(self, other: "AlgebraHom") -> "AlgebraHom":
        """other ∘ self."""
        return AlgebraHom(self.source, other.target, other.map @ self.map)


@dataclass(frozen=True)
class RightModule:
    """A right A-module M with action ρ_M: M ⊗ A -> M."""

    algebra: StructureAlgebra
    space: BasedSpace
    action: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.action.domain != tensor_space(self.space, self.algebra.space) or self.action.codomain != self.space:
            raise DimensionMismatchError("right action must map M⊗A -> M")

    @classmethod
    def regular(cls, algebra: StructureAlgebra) -> "RightModule":
        return cls(algebra, algebra.space, algebra.mult, name=f"{algebra.name}_{algebra.name}")


@dataclass(frozen=True)
class LeftModule:
    """A left A-module N with action λ_N: A ⊗ N -> N."""

    algebra: StructureAlgebra
    space: BasedSpace
    action: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.action.domain != tensor_space(self.algebra.space, self.space) or self.action.codomain != self.space:
            raise DimensionMismatchError("left action must map A⊗N -> N")

    @classmethod
    def regular(cls, algebra: StructureAlgebra) -> "LeftModule":
        return cls(algebra, algebra.space, algebra.mult, name=f"{algebra.name}{algebra.name}")


@dataclass(frozen=True)
class Bimodule:
    """An (A, B)-bimodule: left A-action and right B-action on one space."""

    left_algebra: StructureAlgebra
    right_algebra: StructureAlgebra
    space: BasedSpace
    left_action: LinMap
    right_action: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        LeftModule(self.left_algebra, self.space, self.left_action)
        RightModule(self.right_algebra, self.space, self.right_action)

    @classmethod
    def regular(cls, algebra: StructureAlgebra) -> "Bimodule":
        return cls(algebra, algebra, algebra.space, algebra.mult, algebra.mult, name=algebra.name)

    def as_left(self) -> LeftModule:
        return LeftModule(self.left_algebra, self.space, self.left_action, self.name)

    def as_right(self) -> RightModule:
        return RightModule(self.right_algebra, self.space, self.right_action, self.name)


@dataclass(frozen=True)
class SepIdempotent:
    """
    Candidate separability idempotent e ∈ S ⊗_R S for φ: R -> S, tested against ξ: T -> S.

    `element` holds coordinates in the quotient basis computed by algmod_service.sep_context.
    """

    base_map: AlgebraHom
    side_map: AlgebraHom
    element: Vector

    def __post_init__(self) -> None:
        if self.base_map.target.dim != self.side_map.target.dim:
            raise DimensionMismatchError("φ and ξ must share the target algebra S")
        object.__setattr__(self, "element", tuple(self.element))


@dataclass(frozen=True)
class RetractionAlpha:
    """Candidate retraction α: S -> R for φ: R -> S, linear over Q through ψ: Q -> R."""

    phi: AlgebraHom
    psi: AlgebraHom
    map: LinMap

    def __post_init__(self) -> None:
        if self.psi.target.dim != self.phi.source.dim:
            raise DimensionMismatchError("ψ must land in the source of φ")
        if self.map.domain != self.phi.target.space or self.map.codomain != self.phi.source.space:
            raise DimensionMismatchError("α must map S -> R")


def field_algebra(field_: Field) -> StructureAlgebra:
    """The base field k as a 1-dimensional algebra."""
    k = unit_space(field_)
    return StructureAlgebra(k, LinMap.from_rows(tensor_space(k, k), k, [[1]]), (field_.one,), "k")


def unit_hom(algebra: StructureAlgebra) -> AlgebraHom:
    """i_A: k -> A as an algebra homomorphism."""
    k = field_algebra(algebra.field)
    return AlgebraHom(k, algebra, LinMap.from_vector(algebra.space, algebra.unit), name=f"i_{algebra.name}")


def identity_hom(algebra: StructureAlgebra) -> AlgebraHom:
    return AlgebraHom(algebra, algebra, algebra.identity(), name=f"id_{algebra.name}")
