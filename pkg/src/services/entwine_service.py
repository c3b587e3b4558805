"""
Entwining structure service.

This module provides:
- Axiom checks for entwining structures, entwined modules and their morphisms
- The induction functors F^C (from A-modules) and F_A (from C-comodules)
- θ certificates (E4.4-E4.6) and ζ certificates (E4.9-E4.11): verification and search
- The Ω and Λ conditions with the T and S maps induced by a certificate
- A naturality harness over a fixed family of entwined modules
"""

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from src.models.algebra import RightModule
from src.models.coalgebra import RightComodule
from src.models.entwining import EntwinedModule, EntwiningStructure, LambdaS, OmegaT, ThetaMap, ZetaMap
from src.schemas.report import ConditionResult, Report
from src.services.algmod_service import check_module
from src.services.coring_service import check_comodule
from src.services.report_service import combine, compare_maps, describe_basis, prefixed
from src.services.search_service import search
from src.utils.exactla import Vector
from src.utils.findim import (
    LinearConditionSystem,
    LinMap,
    chain,
    direct_sum_space,
    inclusion,
    projection,
    tensor_map,
    tensor_power,
    tensor_space,
    unit_space,
)

logger = logging.getLogger(__name__)


class StructureMaps(NamedTuple):
    """Shorthand for the structure maps of (A, C, ψ)."""

    one_a: LinMap
    one_c: LinMap
    mult: LinMap
    unit: LinMap
    comult: LinMap
    counit: LinMap
    psi: LinMap


def structure_maps(e: EntwiningStructure) -> StructureMaps:
    a, c = e.algebra, e.coalgebra
    return StructureMaps(a.identity(), c.identity(), a.mult, a.unit_map, c.comult, c.counit, e.psi)


# Axioms


def check_entwining(e: EntwiningStructure) -> Report:
    """
    Check the four entwining axioms.

    Conditions:
        ent1: ψ ∘ (1_C ⊗ ∇) = (∇ ⊗ 1_C) ∘ (1_A ⊗ ψ) ∘ (ψ ⊗ 1_A)
        ent2: ψ ∘ (1_C ⊗ i_A) = i_A ⊗ 1_C
        ent3: (1_A ⊗ Δ) ∘ ψ = (ψ ⊗ 1_C) ∘ (1_C ⊗ ψ) ∘ (Δ ⊗ 1_A)
        ent4: (1_A ⊗ ε) ∘ ψ = ε ⊗ 1_A

    Examples:
        >>> from src.utils.catalog import grouplike_coalgebra, matrix_algebra, swap_entwining
        >>> from src.utils.exactla import Field
        >>> gf2 = Field.gf(2)
        >>> check_entwining(swap_entwining(matrix_algebra(gf2, 2), grouplike_coalgebra(gf2, 2))).verdict
        'pass'
    """
    m = structure_maps(e)
    a_space, c_space = e.algebra.space, e.coalgebra.space
    k = unit_space(e.field)
    conditions = [
        compare_maps(
            "ent1",
            m.psi @ tensor_map(m.one_c, m.mult),
            chain(tensor_map(m.psi, m.one_a), tensor_map(m.one_a, m.psi), tensor_map(m.mult, m.one_c)),
            describe_basis(c_space, a_space, a_space),
        ),
        compare_maps(
            "ent2", m.psi @ tensor_map(m.one_c, m.unit), tensor_map(m.unit, m.one_c), describe_basis(c_space, k)
        ),
        compare_maps(
            "ent3",
            tensor_map(m.one_a, m.comult) @ m.psi,
            chain(tensor_map(m.comult, m.one_a), tensor_map(m.one_c, m.psi), tensor_map(m.psi, m.one_c)),
            describe_basis(c_space, a_space),
        ),
        compare_maps(
            "ent4",
            tensor_map(m.one_a, m.counit) @ m.psi,
            tensor_map(m.counit, m.one_a),
            describe_basis(c_space, a_space),
        ),
    ]
    return Report.from_conditions("check-entwining", conditions)


def underlying_module(m: EntwinedModule) -> RightModule:
    return RightModule(m.structure.algebra, m.space, m.action, m.name)


def underlying_comodule(m: EntwinedModule) -> RightComodule:
    return RightComodule(m.structure.coalgebra, m.space, m.coaction, m.name)


def check_entwined_module(m: EntwinedModule) -> Report:
    """
    Check the action and coaction axioms and the compatibility
    ρ^M ∘ ρ_M = (ρ_M ⊗ 1_C) ∘ (1_M ⊗ ψ) ∘ (ρ^M ⊗ 1_A).
    """
    s = structure_maps(m.structure)
    one_m = LinMap.identity(m.space)
    compatibility = compare_maps(
        "compatibility",
        m.coaction @ m.action,
        chain(tensor_map(m.coaction, s.one_a), tensor_map(one_m, s.psi), tensor_map(m.action, s.one_c)),
        describe_basis(m.space, m.structure.algebra.space),
    )
    conditions = (
        check_module(underlying_module(m)).conditions
        + check_comodule(underlying_comodule(m)).conditions
        + [compatibility]
    )
    return Report.from_conditions("check-entwined-module", conditions)


def check_entwined_morphism(f: LinMap, source: EntwinedModule, target: EntwinedModule) -> Report:
    """Right A-linearity and right C-colinearity of a linear map between entwined modules."""
    s = structure_maps(source.structure)
    conditions = [
        compare_maps("a-linear", f @ source.action, target.action @ tensor_map(f, s.one_a)),
        compare_maps("c-colinear", target.coaction @ f, tensor_map(f, s.one_c) @ source.coaction),
    ]
    return Report.from_conditions("check-entwined-morphism", conditions)


# Induction functors


def induce_fc(e: EntwiningStructure, m: RightModule) -> EntwinedModule:
    """
    F^C(M) = M ⊗ C with action (ρ_M ⊗ 1_C) ∘ (1_M ⊗ ψ) and coaction 1_M ⊗ Δ.

    Args:
        e: Entwining structure
        m: Right A-module

    Returns:
        EntwinedModule: On M ⊗ C
    """
    s = structure_maps(e)
    one_m = LinMap.identity(m.space)
    action = tensor_map(m.action, s.one_c) @ tensor_map(one_m, s.psi)
    coaction = tensor_map(one_m, s.comult)
    space = tensor_space(m.space, e.coalgebra.space)
    return EntwinedModule(e, space, action, coaction, name=f"F^C({m.name})")


def induce_fa(e: EntwiningStructure, n: RightComodule) -> EntwinedModule:
    """F_A(N) = N ⊗ A with action 1_N ⊗ ∇ and coaction (1_N ⊗ ψ) ∘ (ρ^N ⊗ 1_A)."""
    s = structure_maps(e)
    one_n = LinMap.identity(n.space)
    action = tensor_map(one_n, s.mult)
    coaction = tensor_map(one_n, s.psi) @ tensor_map(n.coaction, s.one_a)
    space = tensor_space(n.space, e.algebra.space)
    return EntwinedModule(e, space, action, coaction, name=f"F_A({n.name})")


def direct_sum_entwined(modules: Sequence[EntwinedModule]) -> EntwinedModule:
    """Block direct sum of entwined modules over one structure."""
    e = modules[0].structure
    s = structure_maps(e)
    spaces = [m.space for m in modules]
    total, _ = direct_sum_space(spaces)
    action = LinMap.zero(tensor_space(total, e.algebra.space), total)
    coaction = LinMap.zero(total, tensor_space(total, e.coalgebra.space))
    for i, m in enumerate(modules):
        inc = inclusion(spaces, i, total)
        proj = projection(spaces, i, total)
        action = action + inc @ m.action @ tensor_map(proj, s.one_a)
        coaction = coaction + tensor_map(inc, s.one_c) @ m.coaction @ proj
    return EntwinedModule(e, total, action, coaction, name=" ⊕ ".join(m.name for m in modules))


# θ certificates


def e44_sides(t: ThetaMap) -> Tuple[LinMap, LinMap]:
    """θ(x ⊗ y₁) ⊗ y₂ and θ(x₂ ⊗ y)_ψ ⊗ x₁^ψ as maps C ⊗ C -> A ⊗ C."""
    s = structure_maps(t.structure)
    lhs = tensor_map(t.map, s.one_c) @ tensor_map(s.one_c, s.comult)
    rhs = chain(tensor_map(s.comult, s.one_c), tensor_map(s.one_c, t.map), s.psi)
    return lhs, rhs


def e45_sides(t: ThetaMap) -> Tuple[LinMap, LinMap]:
    s = structure_maps(t.structure)
    return t.map @ s.comult, s.unit @ s.counit


def e46_sides(t: ThetaMap) -> Tuple[LinMap, LinMap]:
    """Both sides of E4.6 as maps C ⊗ C ⊗ C -> A ⊗ C, evaluated on 1_A ⊗ x ⊗ y ⊗ z."""
    s = structure_maps(t.structure)
    a1, c1, th = s.one_a, s.one_c, t.map
    start = tensor_map(s.unit, c1, c1, c1)
    lhs = chain(
        start,
        tensor_map(a1, c1, c1, s.comult),
        tensor_map(a1, c1, th, c1),
        tensor_map(a1, s.psi, c1),
        tensor_map(s.mult, c1, c1),
        tensor_map(a1, c1, s.comult),
        tensor_map(a1, th, c1),
        tensor_map(s.mult, c1),
    )
    rhs = chain(
        start,
        tensor_map(a1, c1, s.counit, c1),
        tensor_map(a1, c1, s.comult),
        tensor_map(a1, th, c1),
        tensor_map(s.mult, c1),
    )
    return lhs, rhs


def verify_theta(t: ThetaMap) -> Report:
    """
    Check a θ certificate for heavy U_A-separability of U^C.

    Conditions:
        E4.4: θ(x ⊗ y₁) ⊗ y₂ = θ(x₂ ⊗ y)_ψ ⊗ x₁^ψ
        E4.5: θ ∘ Δ = i_A ∘ ε
        E4.6: θ(y ⊗ z₁)_ψ θ(x^ψ ⊗ z₂₁) ⊗ z₂₂ = ε(y) θ(x ⊗ z₁) ⊗ z₂
    """
    c_space = t.structure.coalgebra.space
    conditions = [
        compare_maps("E4.4", *e44_sides(t), describe_basis(c_space, c_space)),
        compare_maps("E4.5", *e45_sides(t), describe_basis(c_space)),
        compare_maps("E4.6", *e46_sides(t), describe_basis(c_space, c_space, c_space)),
    ]
    return Report.from_conditions("verify-theta", conditions)


def solve_theta(e: EntwiningStructure, limit: Optional[int] = None) -> List[ThetaMap]:
    """
    All θ certificates over a finite field: E4.4 and E4.5 are linear, E4.6 filters.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    c_space, a_space = e.coalgebra.space, e.algebra.space
    domain = tensor_space(c_space, c_space)

    def theta(x: Vector) -> ThetaMap:
        return ThetaMap(e, LinMap.from_entries(domain, a_space, x))

    def residual(sides):
        def apply(x: Vector) -> LinMap:
            lhs, rhs = sides(theta(x))
            return lhs - rhs

        return apply

    system = LinearConditionSystem(e.field, domain.dim * a_space.dim)
    system.add("E4.4", residual(e44_sides))
    system.add("E4.5", residual(e45_sides))

    def heavy(x: Vector) -> bool:
        lhs, rhs = e46_sides(theta(x))
        return lhs == rhs

    return [theta(x) for x in search(system, heavy, "solve-theta", limit)]


# ζ certificates


def e49_sides(z: ZetaMap) -> Tuple[LinMap, LinMap]:
    """ζ¹(c) ⊗ ζ²(c)a and a_ψ ζ¹(c^ψ) ⊗ ζ²(c^ψ) as maps C ⊗ A -> A ⊗ A."""
    s = structure_maps(z.structure)
    lhs = tensor_map(s.one_a, s.mult) @ tensor_map(z.map, s.one_a)
    rhs = chain(s.psi, tensor_map(s.one_a, z.map), tensor_map(s.mult, s.one_a))
    return lhs, rhs


def e410_sides(z: ZetaMap) -> Tuple[LinMap, LinMap]:
    s = structure_maps(z.structure)
    return s.mult @ z.map, s.unit @ s.counit


def e411_sides(z: ZetaMap) -> Tuple[LinMap, LinMap]:
    """Both sides of E4.11 as maps C -> A ⊗ A ⊗ A, evaluated on c ⊗ 1_A."""
    s = structure_maps(z.structure)
    a1, c1, ze = s.one_a, s.one_c, z.map
    start = tensor_map(c1, s.unit)
    first = [tensor_map(s.comult, a1), tensor_map(c1, ze, a1), tensor_map(c1, a1, s.mult)]
    lhs = chain(
        start,
        *first,
        tensor_map(s.comult, a1, a1),
        tensor_map(c1, s.psi, a1),
        tensor_map(c1, a1, ze, a1),
        tensor_map(c1, a1, a1, s.mult),
        tensor_map(s.counit, a1, a1, a1),
    )
    rhs = chain(start, *first, tensor_map(c1, a1, s.unit, a1), tensor_map(s.counit, a1, a1, a1))
    return lhs, rhs


def verify_zeta(z: ZetaMap) -> Report:
    """
    Check a ζ certificate for heavy U^C-separability of U_A.

    Conditions:
        E4.9: ζ¹(c) ⊗ ζ²(c)a = a_ψ ζ¹(c^ψ) ⊗ ζ²(c^ψ)
        E4.10: ∇ ∘ ζ = i_A ∘ ε
        E4.11: the triple-tensor condition, both sides computed as maps C -> A ⊗ A ⊗ A
    """
    c_space, a_space = z.structure.coalgebra.space, z.structure.algebra.space
    conditions = [
        compare_maps("E4.9", *e49_sides(z), describe_basis(c_space, a_space)),
        compare_maps("E4.10", *e410_sides(z), describe_basis(c_space)),
        compare_maps("E4.11", *e411_sides(z), describe_basis(c_space)),
    ]
    return Report.from_conditions("verify-zeta", conditions)


def solve_zeta(e: EntwiningStructure, limit: Optional[int] = None) -> List[ZetaMap]:
    """
    All ζ certificates over a finite field: E4.9 and E4.10 are linear, E4.11 filters.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    c_space, a_space = e.coalgebra.space, e.algebra.space
    codomain = tensor_space(a_space, a_space)

    def zeta(x: Vector) -> ZetaMap:
        return ZetaMap(e, LinMap.from_entries(c_space, codomain, x))

    def residual(sides):
        def apply(x: Vector) -> LinMap:
            lhs, rhs = sides(zeta(x))
            return lhs - rhs

        return apply

    system = LinearConditionSystem(e.field, c_space.dim * codomain.dim)
    system.add("E4.9", residual(e49_sides))
    system.add("E4.10", residual(e410_sides))

    def heavy(x: Vector) -> bool:
        lhs, rhs = e411_sides(zeta(x))
        return lhs == rhs

    return [zeta(x) for x in search(system, heavy, "solve-zeta", limit)]


# Induced transformations and the Ω / Λ conditions


def gamma_from_theta(t: ThetaMap, m: EntwinedModule) -> LinMap:
    """γ_M = ρ_M ∘ (1_M ⊗ θ) ∘ (ρ^M ⊗ 1_C): M ⊗ C -> M."""
    one_m = LinMap.identity(m.space)
    return m.action @ tensor_map(one_m, t.map) @ tensor_map(m.coaction, t.structure.coalgebra.identity())


def delta_from_zeta(z: ZetaMap, m: EntwinedModule) -> LinMap:
    """δ_M = (ρ_M ⊗ 1_A) ∘ (1_M ⊗ ζ) ∘ ρ^M: M -> M ⊗ A."""
    one_m = LinMap.identity(m.space)
    return tensor_map(m.action, z.structure.algebra.identity()) @ tensor_map(one_m, z.map) @ m.coaction


def phi_pair(t: ThetaMap, m: EntwinedModule) -> Tuple[LinMap, LinMap]:
    """Φ₁ = γ_M ∘ γ_{F^C U^C M} and Φ₂ = γ_M ∘ (1_M ⊗ ε ⊗ 1_C), both M ⊗ C ⊗ C -> M."""
    s = structure_maps(t.structure)
    gamma = gamma_from_theta(t, m)
    free = induce_fc(t.structure, underlying_module(m))
    one_m = LinMap.identity(m.space)
    return gamma @ gamma_from_theta(t, free), gamma @ tensor_map(one_m, s.counit, s.one_c)


def psi_pair(z: ZetaMap, m: EntwinedModule) -> Tuple[LinMap, LinMap]:
    """Ψ₁ = δ_{F_A U_A M} ∘ δ_M and Ψ₂ = (1_M ⊗ i_A ⊗ 1_A) ∘ δ_M, both M -> M ⊗ A ⊗ A."""
    s = structure_maps(z.structure)
    delta = delta_from_zeta(z, m)
    free = induce_fa(z.structure, underlying_comodule(m))
    one_m = LinMap.identity(m.space)
    return delta_from_zeta(z, free) @ delta, tensor_map(one_m, s.unit, s.one_a) @ delta


def omega_pair(t: ThetaMap) -> Tuple[OmegaT, OmegaT]:
    """T_i = (1_A ⊗ ε) ∘ Φ_i at F^C(A), evaluated on 1_A ⊗ x ⊗ y ⊗ z."""
    e = t.structure
    s = structure_maps(e)
    free = induce_fc(e, RightModule.regular(e.algebra))
    start = tensor_map(s.unit, s.one_c, s.one_c, s.one_c)
    finish = tensor_map(s.one_a, s.counit)
    c3 = tensor_power(e.coalgebra.space, 3)
    maps = [finish @ phi @ start for phi in phi_pair(t, free)]
    return tuple(OmegaT(e, LinMap(c3, e.algebra.space, m.matrix)) for m in maps)


def lambda_pair(z: ZetaMap) -> Tuple[LambdaS, LambdaS]:
    """S_i = (ε ⊗ 1_{A⊗A⊗A}) ∘ Ψ_i at F_A(C), evaluated on c ⊗ 1_A."""
    e = z.structure
    s = structure_maps(e)
    free = induce_fa(e, RightComodule.regular(e.coalgebra))
    start = tensor_map(s.one_c, s.unit)
    finish = tensor_map(s.counit, s.one_a, s.one_a, s.one_a)
    a3 = tensor_power(e.algebra.space, 3)
    maps = [finish @ psi @ start for psi in psi_pair(z, free)]
    return tuple(LambdaS(e, LinMap(e.coalgebra.space, a3, m.matrix)) for m in maps)


def check_omega(t: OmegaT) -> Report:
    """Ω condition: ψ ∘ (1_C ⊗ T) ∘ (Δ ⊗ 1_C ⊗ 1_C) = (T ⊗ 1_C) ∘ (1_C ⊗ 1_C ⊗ Δ)."""
    s = structure_maps(t.structure)
    c = s.one_c
    lhs = s.psi @ tensor_map(c, t.map) @ tensor_map(s.comult, c, c)
    rhs = tensor_map(t.map, c) @ tensor_map(c, c, s.comult)
    space = t.structure.coalgebra.space
    return Report.from_conditions("check-omega", [compare_maps("omega", lhs, rhs, describe_basis(space, space, space))])


def check_lambda(s_map: LambdaS) -> Report:
    """Λ condition: (∇ ⊗ 1_A ⊗ 1_A) ∘ (1_A ⊗ S) ∘ ψ = (1_A ⊗ 1_A ⊗ ∇) ∘ (S ⊗ 1_A)."""
    s = structure_maps(s_map.structure)
    a = s.one_a
    lhs = tensor_map(s.mult, a, a) @ tensor_map(a, s_map.map) @ s.psi
    rhs = tensor_map(a, a, s.mult) @ tensor_map(s_map.map, a)
    e = s_map.structure
    describe = describe_basis(e.coalgebra.space, e.algebra.space)
    return Report.from_conditions("check-lambda", [compare_maps("lambda", lhs, rhs, describe)])


# Naturality harness


class Generator(NamedTuple):
    """A morphism between two members of the test family."""

    name: str
    source: int
    target: int
    map: LinMap


def module_family(e: EntwiningStructure) -> List[EntwinedModule]:
    """F^C(A), F_A(C) and their direct sum."""
    fc = induce_fc(e, RightModule.regular(e.algebra))
    fa = induce_fa(e, RightComodule.regular(e.coalgebra))
    return [fc, fa, direct_sum_entwined([fc, fa])]


def generating_morphisms(e: EntwiningStructure) -> List[Generator]:
    """
    Morphisms among module_family(e).

    ψ: F_A(C) -> F^C(A), left multiplications L_a ⊗ 1_C on F^C(A), the maps
    ((χ_j ⊗ 1_C) ∘ Δ) ⊗ 1_A on F_A(C) for the coordinate functionals χ_j, and the
    inclusions and projections of the direct sum.
    """
    s = structure_maps(e)
    a, c = e.algebra, e.coalgebra
    family = module_family(e)
    generators = [Generator("psi", 1, 0, s.psi)]
    for i in range(a.dim):
        left = a.left_multiplication(a.space.basis_vector(i))
        generators.append(Generator(f"left-mult[{a.space.label(i)}]", 0, 0, tensor_map(left, s.one_c)))
    k = unit_space(e.field)
    for j in range(c.dim):
        chi = LinMap.from_rows(c.space, k, [c.space.basis_vector(j)])
        coeval = tensor_map(chi, s.one_c) @ s.comult
        generators.append(Generator(f"coeval[{c.space.label(j)}]", 1, 1, tensor_map(coeval, s.one_a)))
    spaces = [family[0].space, family[1].space]
    total = family[2].space
    for i in range(2):
        generators.append(Generator(f"inclusion[{i}]", i, 2, inclusion(spaces, i, total)))
        generators.append(Generator(f"projection[{i}]", 2, i, projection(spaces, i, total)))
    return generators


def _morphism_results(family: Sequence[EntwinedModule], generators: Sequence[Generator]) -> List[ConditionResult]:
    results = []
    for index, g in enumerate(generators):
        report = check_entwined_morphism(g.map, family[g.source], family[g.target])
        results.extend(prefixed(c, (index,), tag="morphism") for c in report.conditions)
    return results


def _harness_report(kind: str, results: Sequence[ConditionResult], family_size: int, generator_count: int) -> Report:
    conditions = []
    for tag in ("morphism", "identity", "heavy", "natural"):
        tagged = [c for c in results if c.tag == tag]
        if tagged:
            conditions.append(combine(tag, tagged))
    notes = [f"{family_size} test module(s)", f"{generator_count} generating morphism(s)"]
    return Report.from_conditions(kind, conditions, notes=notes)


def check_theta_naturality(t: ThetaMap) -> Report:
    """
    Evaluate the transformation γ induced by θ on the test family.

    Conditions (witness locations are prefixed with the module or generator index):
        morphism: each generator is a morphism of entwined modules
        identity: γ_M ∘ ρ^M = 1_M
        heavy: Φ₁ = Φ₂ on M ⊗ C ⊗ C
        natural: γ_N ∘ (f ⊗ 1_C) = f ∘ γ_M for every generator f: M -> N
    """
    e = t.structure
    s = structure_maps(e)
    family = module_family(e)
    generators = generating_morphisms(e)
    results = _morphism_results(family, generators)
    gammas = [gamma_from_theta(t, m) for m in family]
    for index, (m, gamma) in enumerate(zip(family, gammas)):
        one_m = LinMap.identity(m.space)
        results.append(compare_maps("identity", gamma @ m.coaction, one_m, prefix=(index,)))
        results.append(compare_maps("heavy", *phi_pair(t, m), prefix=(index,)))
    for index, g in enumerate(generators):
        lhs = gammas[g.target] @ tensor_map(g.map, s.one_c)
        rhs = g.map @ gammas[g.source]
        results.append(compare_maps("natural", lhs, rhs, prefix=(index,)))
    logger.info(f"check_theta_naturality: {len(family)} modules, {len(generators)} generators")
    return _harness_report("naturality-theta", results, len(family), len(generators))


def check_zeta_naturality(z: ZetaMap) -> Report:
    """
    Evaluate the transformation δ induced by ζ on the test family.

    Conditions:
        morphism: each generator is a morphism of entwined modules
        identity: ρ_M ∘ δ_M = 1_M
        heavy: Ψ₁ = Ψ₂ on M
        natural: δ_N ∘ f = (f ⊗ 1_A) ∘ δ_M for every generator f: M -> N
    """
    e = z.structure
    s = structure_maps(e)
    family = module_family(e)
    generators = generating_morphisms(e)
    results = _morphism_results(family, generators)
    deltas = [delta_from_zeta(z, m) for m in family]
    for index, (m, delta) in enumerate(zip(family, deltas)):
        one_m = LinMap.identity(m.space)
        results.append(compare_maps("identity", m.action @ delta, one_m, prefix=(index,)))
        results.append(compare_maps("heavy", *psi_pair(z, m), prefix=(index,)))
    for index, g in enumerate(generators):
        lhs = deltas[g.target] @ g.map
        rhs = tensor_map(g.map, s.one_a) @ deltas[g.source]
        results.append(compare_maps("natural", lhs, rhs, prefix=(index,)))
    logger.info(f"check_zeta_naturality: {len(family)} modules, {len(generators)} generators")
    return _harness_report("naturality-zeta", results, len(family), len(generators))
