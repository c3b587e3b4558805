"""
Entwining structures (A, C, ψ), entwined modules and the θ/ζ certificates with their
Ω/Λ companions.
"""

from dataclasses import dataclass, field

from src.models.algebra import StructureAlgebra
from src.models.coalgebra import StructureCoalgebra
from src.utils.exactla import DimensionMismatchError, Field
from src.utils.findim import BasedSpace, LinMap, tensor_power, tensor_space


@dataclass(frozen=True)
class EntwiningStructure:
    """
    A right-right entwining ψ: C ⊗ A -> A ⊗ C.

    Attributes:
        algebra: The algebra A
        coalgebra: The coalgebra C
        psi: The entwining map
        name: Display name
    """

    algebra: StructureAlgebra
    coalgebra: StructureCoalgebra
    psi: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        a, c = self.algebra.space, self.coalgebra.space
        if a.field != c.field:
            raise DimensionMismatchError("algebra and coalgebra must share one field")
        if self.psi.domain != tensor_space(c, a) or self.psi.codomain != tensor_space(a, c):
            raise DimensionMismatchError("ψ must map C⊗A -> A⊗C")

    @property
    def field(self) -> Field:
        return self.algebra.field


@dataclass(frozen=True)
class EntwinedModule:
    """An (A, C, ψ)-entwined module: right A-action ρ_M and right C-coaction ρ^M on one space."""

    structure: EntwiningStructure
    space: BasedSpace
    action: LinMap
    coaction: LinMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        a, c = self.structure.algebra.space, self.structure.coalgebra.space
        if self.action.domain != tensor_space(self.space, a) or self.action.codomain != self.space:
            raise DimensionMismatchError("action must map M⊗A -> M")
        if self.coaction.domain != self.space or self.coaction.codomain != tensor_space(self.space, c):
            raise DimensionMismatchError("coaction must map M -> M⊗C")

    @property
    def dim(self) -> int:
        return self.space.dim


def _check_shape(what: str, m: LinMap, domain: BasedSpace, codomain: BasedSpace, shape: str) -> None:
    if m.domain != domain or m.codomain != codomain:
        raise DimensionMismatchError(f"{what} must map {shape}, got {m.domain.dim} -> {m.codomain.dim}")


@dataclass(frozen=True)
class ThetaMap:
    """Candidate θ: C ⊗ C -> A witnessing heavy U_A-separability of the forgetful functor U^C."""

    structure: EntwiningStructure
    map: LinMap

    def __post_init__(self) -> None:
        c = self.structure.coalgebra.space
        _check_shape("θ", self.map, tensor_space(c, c), self.structure.algebra.space, "C⊗C -> A")


@dataclass(frozen=True)
class ZetaMap:
    """Candidate ζ: C -> A ⊗ A witnessing heavy U^C-separability of the forgetful functor U_A."""

    structure: EntwiningStructure
    map: LinMap

    def __post_init__(self) -> None:
        a = self.structure.algebra.space
        _check_shape("ζ", self.map, self.structure.coalgebra.space, tensor_space(a, a), "C -> A⊗A")


@dataclass(frozen=True)
class OmegaT:
    """A map T: C ⊗ C ⊗ C -> A tested against the Ω condition."""

    structure: EntwiningStructure
    map: LinMap

    def __post_init__(self) -> None:
        c = self.structure.coalgebra.space
        _check_shape("T", self.map, tensor_power(c, 3), self.structure.algebra.space, "C⊗C⊗C -> A")


@dataclass(frozen=True)
class LambdaS:
    """A map S: C -> A ⊗ A ⊗ A tested against the Λ condition."""

    structure: EntwiningStructure
    map: LinMap

    def __post_init__(self) -> None:
        a = self.structure.algebra.space
        _check_shape("S", self.map, self.structure.coalgebra.space, tensor_power(a, 3), "C -> A⊗A⊗A")
