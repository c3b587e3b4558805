"""
Coalgebra and coring service.

Checks coalgebra, comodule and coring axioms, builds the Sweedler and trivial corings, and
verifies or searches for invariant grouplike elements. Coring equalities are always tested
after projecting into C ⊗_A C (and C ⊗_A C ⊗_A C for coassociativity).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from src.models.algebra import AlgebraHom, Bimodule, RightModule, StructureAlgebra, field_algebra
from src.models.coalgebra import Coring, GrouplikeElement, RightComodule, StructureCoalgebra
from src.schemas.report import Report
from src.services.algmod_service import alg_tensor, check_module, sep_context
from src.services.report_service import AxiomFailure, combine, compare_maps, compare_vectors, describe_basis
from src.services.search_service import search
from src.utils.exactla import Vector
from src.utils.findim import LinearConditionSystem, LinMap, QuotientSpace, tensor_map, tensor_space, unit_space

logger = logging.getLogger(__name__)


def check_coalgebra(c: StructureCoalgebra) -> Report:
    """
    Check coassociativity and both counit laws.

    Returns:
        Report: Conditions "coassoc", "counit-left", "counit-right"; witnesses are basis indices of C
    """
    one = c.identity()
    describe = describe_basis(c.space)
    conditions = [
        compare_maps("coassoc", tensor_map(c.comult, one) @ c.comult, tensor_map(one, c.comult) @ c.comult, describe),
        compare_maps("counit-left", tensor_map(c.counit, one) @ c.comult, one, describe),
        compare_maps("counit-right", tensor_map(one, c.counit) @ c.comult, one, describe),
    ]
    return Report.from_conditions("check-coalgebra", conditions)


def check_comodule(n: RightComodule) -> Report:
    """Coassociativity (ρ ⊗ 1) ∘ ρ = (1 ⊗ Δ) ∘ ρ and counitality (1 ⊗ ε) ∘ ρ = 1 of a comodule."""
    c = n.coalgebra
    one_n = LinMap.identity(n.space)
    describe = describe_basis(n.space)
    conditions = [
        compare_maps(
            "coaction-coassoc",
            tensor_map(n.coaction, c.identity()) @ n.coaction,
            tensor_map(one_n, c.comult) @ n.coaction,
            describe,
        ),
        compare_maps("coaction-counit", tensor_map(one_n, c.counit) @ n.coaction, one_n, describe),
    ]
    return Report.from_conditions("check-comodule", conditions)


@dataclass(frozen=True)
class CoringTensors:
    """C ⊗_A C with its bimodule actions, and C ⊗_A C ⊗_A C built from it left to right."""

    double: QuotientSpace
    left_action: LinMap
    right_action: LinMap
    triple: QuotientSpace

    def project_triple(self, c: Coring) -> LinMap:
        """C ⊗ C ⊗ C -> C ⊗_A C ⊗_A C."""
        return self.triple.projection @ tensor_map(self.double.projection, LinMap.identity(c.space))


@lru_cache(maxsize=32)
def coring_tensors(c: Coring) -> CoringTensors:
    b = c.bimodule
    a_one = c.base.identity()
    one_c = LinMap.identity(c.space)
    double = alg_tensor(b.as_right(), b.as_left())
    left = double.projection @ tensor_map(b.left_action, one_c) @ tensor_map(a_one, double.section)
    right = double.projection @ tensor_map(one_c, b.right_action) @ tensor_map(double.section, a_one)
    triple = alg_tensor(RightModule(c.base, double.space, right), b.as_left())
    logger.debug(f"coring_tensors: dim C⊗_A C = {double.dim}, dim C⊗_A C⊗_A C = {triple.dim}")
    return CoringTensors(double, left, right, triple)


def check_coring(c: Coring) -> Report:
    """
    Check the coring axioms.

    Conditions:
        bimodule: the (A, A)-bimodule axioms on C
        comult-linear: Δ is A-bilinear into C ⊗_A C
        counit-linear: ε is A-bilinear into A
        counit: both counit laws, evaluated through C ⊗_A C
        coassoc: coassociativity in C ⊗_A C ⊗_A C
    """
    b = c.bimodule
    a = c.base
    tensors = coring_tensors(c)
    one_c = LinMap.identity(c.space)
    a_one = a.identity()
    comult = tensors.double.projection @ c.comult
    expanded = tensors.double.section @ comult
    bimodule = check_module(b)
    bimodule_result = combine("bimodule", bimodule.conditions)

    comult_linear = combine(
        "comult-linear",
        [
            compare_maps("comult-linear", comult @ b.left_action, tensors.left_action @ tensor_map(a_one, comult)),
            compare_maps("comult-linear", comult @ b.right_action, tensors.right_action @ tensor_map(comult, a_one)),
        ],
    )
    counit_linear = combine(
        "counit-linear",
        [
            compare_maps("counit-linear", c.counit @ b.left_action, a.mult @ tensor_map(a_one, c.counit)),
            compare_maps("counit-linear", c.counit @ b.right_action, a.mult @ tensor_map(c.counit, a_one)),
        ],
    )
    describe = describe_basis(c.space)
    counit = combine(
        "counit",
        [
            compare_maps("counit", b.left_action @ tensor_map(c.counit, one_c) @ expanded, one_c, describe),
            compare_maps("counit", b.right_action @ tensor_map(one_c, c.counit) @ expanded, one_c, describe),
        ],
    )
    project3 = tensors.project_triple(c)
    coassoc = compare_maps(
        "coassoc",
        project3 @ tensor_map(c.comult, one_c) @ expanded,
        project3 @ tensor_map(one_c, c.comult) @ expanded,
        describe,
    )
    conditions = [bimodule_result, comult_linear, counit_linear, counit, coassoc]
    return Report.from_conditions(
        "check-coring", conditions, notes=[f"dim C = {c.dim}", f"dim C⊗_A C = {tensors.double.dim}"]
    )


def _validated(c: Coring) -> Coring:
    report = check_coring(c)
    if not report.passed:
        raise AxiomFailure(f"coring {c.name or ''} fails its axioms", report)
    return c


def sweedler_coring(phi: AlgebraHom) -> Coring:
    """
    The Sweedler coring S ⊗_R S of φ: R -> S.

    Δ(s₁ ⊗ s₂) = s₁ ⊗ 1 ⊗ s₂ and ε(s₁ ⊗ s₂) = s₁s₂. Coordinates are those of the
    quotient used by algmod_service.sep_context, so grouplikes and separability idempotents share one basis.

    Raises:
        AxiomFailure: The constructed coring fails check_coring
    """
    ctx = sep_context(phi)
    s_alg = ctx.algebra
    q = ctx.quotient
    one = s_alg.identity()
    u = s_alg.unit_map
    comult = tensor_map(q.projection, q.projection) @ tensor_map(one, u, u, one) @ q.section
    counit = s_alg.mult @ q.section
    logger.info(f"sweedler_coring: dim S⊗_R S = {q.dim}")
    return _validated(Coring(s_alg, ctx.bimodule, comult, counit, name=f"Sweedler({phi.name or 'φ'})"))


def trivial_coring(algebra: StructureAlgebra) -> Coring:
    """C = A with Δ(a) = a ⊗ 1 and ε = 1_A."""
    a = algebra
    comult = tensor_map(a.identity(), a.unit_map)
    return _validated(Coring(a, Bimodule.regular(a), comult, a.identity(), name=f"trivial({a.name})"))


def coalgebra_as_coring(coalgebra: StructureCoalgebra) -> Coring:
    """A coalgebra as a coring over the base field."""
    c = coalgebra
    k = field_algebra(c.field)
    one = c.identity()
    left = LinMap(tensor_space(k.space, c.space), c.space, one.matrix)
    right = LinMap(tensor_space(c.space, k.space), c.space, one.matrix)
    bimodule = Bimodule(k, k, c.space, left, right, name=c.name)
    counit = LinMap(c.space, k.space, c.counit.matrix)
    return _validated(Coring(k, bimodule, c.comult, counit, name=c.name))


def _invariant_sides(c: Coring, x: Vector):
    x_map = LinMap.from_vector(c.space, x)
    a_one = c.base.identity()
    return c.bimodule.left_action @ tensor_map(a_one, x_map), c.bimodule.right_action @ tensor_map(x_map, a_one)


def _grouplike_sides(c: Coring, x: Vector):
    tensors = coring_tensors(c)
    double = tensors.double.projection
    return double(c.comult(x)), double(tuple(c.field.mul(p, q) for p in x for q in x))


def verify_grouplike(g: GrouplikeElement) -> Report:
    """
    Check that x is an invariant grouplike element.

    Conditions:
        invariant: a·x = x·a for every basis element a of A
        counit: ε(x) = 1_A
        grouplike: Δ(x) = x ⊗ x in C ⊗_A C
    """
    c, x = g.coring, g.vector
    f = c.field
    lhs, rhs = _invariant_sides(c, x)
    delta, square = _grouplike_sides(c, x)
    conditions = [
        compare_maps("invariant", lhs, rhs, describe_basis(c.base.space, unit_space(f))),
        compare_vectors("counit", f, c.counit(x), c.base.unit, detail="ε(x) differs from 1"),
        compare_vectors("grouplike", f, delta, square, detail="Δ(x) differs from x ⊗ x in C⊗_A C"),
    ]
    return Report.from_conditions("verify-grouplike", conditions)


def find_invariant_grouplikes(c: Coring, limit: Optional[int] = None) -> List[GrouplikeElement]:
    """
    All invariant grouplike elements of a coring over a finite field.

    Invariance and ε(x) = 1 are linear in x; Δ(x) = x ⊗ x filters the enumerated candidates.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    f = c.field
    system = LinearConditionSystem(f, c.dim)

    def invariant(x: Vector) -> LinMap:
        lhs, rhs = _invariant_sides(c, x)
        return lhs - rhs

    system.add("invariant", invariant)
    system.add("counit", lambda x: tuple(f.sub(p, q) for p, q in zip(c.counit(x), c.base.unit)))

    def grouplike(x: Vector) -> bool:
        delta, square = _grouplike_sides(c, x)
        return delta == square

    found = search(system, grouplike, "find-grouplike", limit)
    return [GrouplikeElement(c, x) for x in found]
