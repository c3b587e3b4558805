"""
Coalgebras, right comodules, A-corings and grouplike elements.
"""

from dataclasses import dataclass, field

from src.models.algebra import Bimodule, StructureAlgebra
from src.utils.exactla import DimensionMismatchError, Field, Vector
from src.utils.findim import BasedSpace, LinMap, tensor_space, unit_space


@dataclass(frozen=True)
class StructureCoalgebra:
    """
    A counital coalgebra C with comultiplication Δ: C -> C ⊗ C and counit ε: C -> k.

    Attributes:
        space: Underlying based space
        comult: Comultiplication
        counit: Counit as a 1 x dim C map
        name: Display name
    """

    space: BasedSpace
    comult: LinMap
    counit: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.comult.domain != self.space or self.comult.codomain != tensor_space(self.space, self.space):
            raise DimensionMismatchError(f"comultiplication of {self.name or 'coalgebra'} must map C -> C⊗C")
        if self.counit.domain != self.space or self.counit.codomain != unit_space(self.space.field):
            raise DimensionMismatchError("counit must map C -> k")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.space.field

    def identity(self) -> LinMap:
        return LinMap.identity(self.space)


@dataclass(frozen=True)
class RightComodule:
    """A right C-comodule N with coaction ρ^N: N -> N ⊗ C."""

    coalgebra: StructureCoalgebra
    space: BasedSpace
    coaction: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        expected = tensor_space(self.space, self.coalgebra.space)
        if self.coaction.domain != self.space or self.coaction.codomain != expected:
            raise DimensionMismatchError("coaction must map N -> N⊗C")

    @classmethod
    def regular(cls, coalgebra: StructureCoalgebra) -> "RightComodule":
        return cls(coalgebra, coalgebra.space, coalgebra.comult, name=coalgebra.name)


@dataclass(frozen=True)
class Coring:
    """
    An A-coring: an (A, A)-bimodule C with A-bilinear Δ: C -> C ⊗_A C and ε: C -> A.

    The comultiplication is stored with codomain C ⊗ C; every comparison descends through
    the projection onto C ⊗_A C.

    Attributes:
        base: The algebra A
        bimodule: The (A, A)-bimodule structure on C
        comult: Representative comultiplication C -> C ⊗ C
        counit: Counit C -> A
        name: Display name
    """

    base: StructureAlgebra
    bimodule: Bimodule
    comult: LinMap
    counit: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        c = self.bimodule.space
        if self.bimodule.left_algebra != self.base or self.bimodule.right_algebra != self.base:
            raise DimensionMismatchError("coring bimodule must be over its base algebra on both sides")
        if self.comult.domain != c or self.comult.codomain != tensor_space(c, c):
            raise DimensionMismatchError("coring comultiplication must map C -> C⊗C")
        if self.counit.domain != c or self.counit.codomain != self.base.space:
            raise DimensionMismatchError("coring counit must map C -> A")

    @property
    def space(self) -> BasedSpace:
        return self.bimodule.space

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.space.field


@dataclass(frozen=True)
class GrouplikeElement:
    """Candidate invariant grouplike x ∈ C: ax = xa, ε(x) = 1 and Δ(x) = x ⊗ x."""

    coring: Coring
    vector: Vector

    def __post_init__(self) -> None:
        if len(self.vector) != self.coring.dim:
            raise DimensionMismatchError(f"grouplike has {len(self.vector)} coordinates, coring has {self.coring.dim}")
        object.__setattr__(self, "vector", tuple(self.vector))
