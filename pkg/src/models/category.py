"""
Small field-linear categories, linear functors, category modules and the
category-level certificates for extension and restriction of scalars.

Containers here compare by identity: the hom tables are dictionaries.
"""

from dataclasses import dataclass, field
from typing import Dict, Literal, Mapping, Tuple

from src.utils.exactla import DimensionMismatchError, Field, Vector
from src.utils.findim import BasedSpace, LinMap, tensor_space

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]
Variance = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class LinearCategory:
    """
    A category with finitely many objects whose hom sets are based vector spaces.

    Attributes:
        objects: Object names in a fixed order
        homs: (a, b) -> hom(a, b)
        compose: (a, b, c) -> hom(b, c) ⊗ hom(a, b) -> hom(a, c), g ⊗ f ↦ g ∘ f
        identities: a -> coordinates of 1_a in hom(a, a)
        field: Scalar field
        name: Display name
    """

    objects: Tuple[str, ...]
    homs: Mapping[Pair, BasedSpace]
    compose: Mapping[Triple, LinMap]
    identities: Mapping[str, Vector]
    field: Field
    name: str = ""

    def __post_init__(self) -> None:
        objects = tuple(self.objects)
        object.__setattr__(self, "objects", objects)
        if len(set(objects)) != len(objects):
            raise ValueError(f"duplicate objects in category {self.name!r}")
        for a in objects:
            for b in objects:
                if (a, b) not in self.homs:
                    raise DimensionMismatchError(f"missing hom({a}, {b})")
            if len(self.identities.get(a, ())) != self.homs[(a, a)].dim:
                raise DimensionMismatchError(f"identity of {a} has the wrong length")
        for a in objects:
            for b in objects:
                for c in objects:
                    m = self.compose.get((a, b, c))
                    if m is None:
                        raise DimensionMismatchError(f"missing composition {a} -> {b} -> {c}")
                    if m.domain != tensor_space(self.hom(b, c), self.hom(a, b)) or m.codomain != self.hom(a, c):
                        raise DimensionMismatchError(f"composition {a} -> {b} -> {c} has the wrong shape")

    def hom(self, a: str, b: str) -> BasedSpace:
        return self.homs[(a, b)]

    def identity(self, a: str) -> LinMap:
        """1_a as a map k -> hom(a, a)."""
        return LinMap.from_vector(self.hom(a, a), self.identities[a])

    def index(self, a: str) -> int:
        return self.objects.index(a)


@dataclass(frozen=True, eq=False)
class LinearFunctor:
    """A linear functor: an object map and linear maps hom(a, b) -> hom(Fa, Fb)."""

    source: LinearCategory
    target: LinearCategory
    object_map: Mapping[str, str]
    hom_maps: Mapping[Pair, LinMap]
    name: str = ""

    def __post_init__(self) -> None:
        for a in self.source.objects:
            if self.object_map.get(a) not in self.target.objects:
                raise DimensionMismatchError(f"functor {self.name!r} sends {a} outside the target category")
        for (a, b), m in self.hom_maps.items():
            if m.domain != self.source.hom(a, b) or m.codomain != self.target.hom(self(a), self(b)):
                raise DimensionMismatchError(f"functor {self.name!r} has a wrongly shaped map on hom({a}, {b})")
        for a in self.source.objects:
            for b in self.source.objects:
                if (a, b) not in self.hom_maps:
                    raise DimensionMismatchError(f"functor {self.name!r} has no map on hom({a}, {b})")

    def __call__(self, a: str) -> str:
        return self.object_map[a]

    def on(self, a: str, b: str) -> LinMap:
        return self.hom_maps[(a, b)]


@dataclass(frozen=True, eq=False)
class CatModule:
    """
    A linear functor from a category (right: contravariant) to vector spaces.

    Right modules store action[(a, b)]: M(b) ⊗ hom(a, b) -> M(a); left modules store
    action[(a, b)]: hom(a, b) ⊗ N(a) -> N(b).
    """

    category: LinearCategory
    variance: Variance
    values: Mapping[str, BasedSpace]
    actions: Mapping[Pair, LinMap]
    name: str = ""

    def __post_init__(self) -> None:
        c = self.category
        for a in c.objects:
            for b in c.objects:
                m = self.actions.get((a, b))
                if m is None:
                    raise DimensionMismatchError(f"module {self.name!r} has no action for hom({a}, {b})")
                if self.variance == "right":
                    domain, codomain = tensor_space(self.values[b], c.hom(a, b)), self.values[a]
                else:
                    domain, codomain = tensor_space(c.hom(a, b), self.values[a]), self.values[b]
                if m.domain != domain or m.codomain != codomain:
                    raise DimensionMismatchError(f"module {self.name!r} has a wrongly shaped action on hom({a}, {b})")

    def value(self, a: str) -> BasedSpace:
        return self.values[a]

    def action(self, a: str, b: str) -> LinMap:
        return self.actions[(a, b)]


@dataclass(frozen=True, eq=False)
class ExtAlpha:
    """
    Candidate α for heavy ψ*-separability of φ*: components α_{a,b}: S(φψa, φb) -> R(ψa, b)
    for a in Q and b in R.
    """

    psi: LinearFunctor
    phi: LinearFunctor
    components: Mapping[Pair, LinMap]

    def __post_init__(self) -> None:
        if self.psi.target.objects != self.phi.source.objects:
            raise DimensionMismatchError("ψ must land in the source category of φ")
        r_cat, s_cat = self.phi.source, self.phi.target
        for a in self.psi.source.objects:
            for b in r_cat.objects:
                m = self.components.get((a, b))
                pa = self.psi(a)
                if m is None:
                    raise DimensionMismatchError(f"α has no component at ({a}, {b})")
                if m.domain != s_cat.hom(self.phi(pa), self.phi(b)) or m.codomain != r_cat.hom(pa, b):
                    raise DimensionMismatchError(f"α component at ({a}, {b}) has the wrong shape")


@dataclass(frozen=True, eq=False)
class ResGamma:
    """
    Candidate Γ for heavy ξ*-separability of φ*: for each object a of T, Γ_a in the coend
    S(φ−, ξa) ⊗_R S(ξa, φ−), as coordinates in the quotient built by precat_service.
    """

    phi: LinearFunctor
    xi: LinearFunctor
    elements: Dict[str, Vector] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.phi.target.objects != self.xi.target.objects:
            raise DimensionMismatchError("φ and ξ must share the target category")
        missing = [a for a in self.xi.source.objects if a not in self.elements]
        if missing:
            raise DimensionMismatchError(f"Γ has no element for objects {missing}")
        object.__setattr__(self, "elements", {a: tuple(v) for a, v in self.elements.items()})
