"""
Algebra and module service.

This module provides:
- Axiom checks for algebras, homomorphisms and (bi)modules
- Tensor products over an algebra (alg_tensor, tensor_bimodules) and restriction of scalars
- Retraction certificates α: S -> R (verify_retraction, verify_retraction_ideal, solvers)
- Separability idempotents e ∈ S ⊗_R S with the Eq1-Eq3 conditions, their solver and the
  induced-transformation harness
- Search for unital algebra homomorphisms
"""

import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from src.models.algebra import (
    AlgebraHom,
    Bimodule,
    LeftModule,
    RetractionAlpha,
    RightModule,
    SepIdempotent,
    StructureAlgebra,
    identity_hom,
)
from src.schemas.report import ConditionResult, Report
from src.services.report_service import (
    combine,
    compare_maps,
    compare_vectors,
    describe_basis,
    format_vector,
    prefixed,
)
from src.services.search_service import linear_space, search
from src.utils.exactla import AffineSpace, DimensionMismatchError, Vector, nullspace
from src.utils.findim import (
    BasedSpace,
    LinearConditionSystem,
    LinMap,
    QuotientSpace,
    cokernel,
    tensor_map,
    tensor_vector,
    unit_space,
)

logger = logging.getLogger(__name__)

Module = Union[RightModule, LeftModule, Bimodule]


# Axiom checks


def check_algebra(a: StructureAlgebra) -> Report:
    """
    Check associativity and the unit laws of an algebra.

    Args:
        a: Algebra given by structure constants

    Returns:
        Report: Conditions "assoc", "unit-left", "unit-right"; witnesses are basis triples/elements

    Examples:
        >>> from src.utils.catalog import matrix_algebra
        >>> from src.utils.exactla import Field
        >>> check_algebra(matrix_algebra(Field.rational(), 2)).verdict
        'pass'
    """
    one = a.identity()
    k = unit_space(a.field)
    u = a.unit_map
    conditions = [
        compare_maps(
            "assoc",
            a.mult @ tensor_map(a.mult, one),
            a.mult @ tensor_map(one, a.mult),
            describe_basis(a.space, a.space, a.space),
        ),
        compare_maps("unit-left", a.mult @ tensor_map(u, one), one, describe_basis(k, a.space)),
        compare_maps("unit-right", a.mult @ tensor_map(one, u), one, describe_basis(a.space, k)),
    ]
    return Report.from_conditions("check-algebra", conditions)


def check_hom(h: AlgebraHom) -> Report:
    """Check unitality and multiplicativity of an algebra map on basis pairs."""
    src, tgt = h.source, h.target
    conditions = [
        compare_vectors("hom-unit", tgt.field, h.map(src.unit), tgt.unit, detail="image of the unit"),
        compare_maps(
            "hom-mult",
            h.map @ src.mult,
            tgt.mult @ tensor_map(h.map, h.map),
            describe_basis(src.space, src.space),
        ),
    ]
    return Report.from_conditions("check-hom", conditions)


def _right_module_conditions(m: RightModule, suffix: str = "") -> List[ConditionResult]:
    a = m.algebra
    one_m = LinMap.identity(m.space)
    return [
        compare_maps(
            f"action-assoc{suffix}",
            m.action @ tensor_map(m.action, a.identity()),
            m.action @ tensor_map(one_m, a.mult),
            describe_basis(m.space, a.space, a.space),
        ),
        compare_maps(
            f"action-unit{suffix}",
            m.action @ tensor_map(one_m, a.unit_map),
            one_m,
            describe_basis(m.space, unit_space(a.field)),
        ),
    ]


def _left_module_conditions(n: LeftModule, suffix: str = "") -> List[ConditionResult]:
    a = n.algebra
    one_n = LinMap.identity(n.space)
    return [
        compare_maps(
            f"action-assoc{suffix}",
            n.action @ tensor_map(a.mult, one_n),
            n.action @ tensor_map(a.identity(), n.action),
            describe_basis(a.space, a.space, n.space),
        ),
        compare_maps(
            f"action-unit{suffix}",
            n.action @ tensor_map(a.unit_map, one_n),
            one_n,
            describe_basis(unit_space(a.field), n.space),
        ),
    ]


def check_module(m: Module) -> Report:
    """
    Check the action axioms of a right module, left module or bimodule.

    For bimodules the two actions must also commute: (a·m)·b = a·(m·b).
    """
    if isinstance(m, RightModule):
        conditions = _right_module_conditions(m)
    elif isinstance(m, LeftModule):
        conditions = _left_module_conditions(m)
    else:
        conditions = _left_module_conditions(m.as_left(), "-left") + _right_module_conditions(m.as_right(), "-right")
        conditions.append(
            compare_maps(
                "bimodule-commute",
                m.right_action @ tensor_map(m.left_action, m.right_algebra.identity()),
                m.left_action @ tensor_map(m.left_algebra.identity(), m.right_action),
                describe_basis(m.left_algebra.space, m.space, m.right_algebra.space),
            )
        )
    return Report.from_conditions("check-module", conditions)


# Tensor products and restriction of scalars


def alg_tensor(m: RightModule, n: LeftModule) -> QuotientSpace:
    """
    M ⊗_R N as a quotient of M ⊗ N.

    The relations (m_i·r_j) ⊗ n_k − m_i ⊗ (r_j·n_k) are taken over all basis triples in
    lexicographic order.

    Raises:
        DimensionMismatchError: The modules are over different algebras
    """
    if m.algebra != n.algebra:
        raise DimensionMismatchError("alg_tensor needs a right and a left module over the same algebra")
    one_m = LinMap.identity(m.space)
    one_n = LinMap.identity(n.space)
    relations = tensor_map(m.action, one_n) - tensor_map(one_m, n.action)
    quotient = cokernel(relations)
    logger.debug(f"alg_tensor: {m.space.dim} x {n.space.dim} over dim {m.algebra.dim} -> {quotient.dim}")
    return quotient


def tensor_bimodules(m: Bimodule, n: Bimodule) -> Tuple[QuotientSpace, Bimodule]:
    """
    Tensor an (A, R)-bimodule with an (R, B)-bimodule over R.

    Returns:
        Tuple of the quotient M ⊗_R N and the induced (A, B)-bimodule on it
    """
    q = alg_tensor(m.as_right(), n.as_left())
    one_m = LinMap.identity(m.space)
    one_n = LinMap.identity(n.space)
    left = q.projection @ tensor_map(m.left_action, one_n) @ tensor_map(m.left_algebra.identity(), q.section)
    right = q.projection @ tensor_map(one_m, n.right_action) @ tensor_map(q.section, n.right_algebra.identity())
    bimodule = Bimodule(m.left_algebra, n.right_algebra, q.space, left, right, name=f"{m.name}⊗{n.name}")
    return q, bimodule


def restrict_right(m: RightModule, hom: AlgebraHom) -> RightModule:
    """Restriction of scalars along hom: R -> S for a right S-module."""
    return RightModule(hom.source, m.space, m.action @ tensor_map(LinMap.identity(m.space), hom.map), m.name)


def restrict_left(n: LeftModule, hom: AlgebraHom) -> LeftModule:
    return LeftModule(hom.source, n.space, n.action @ tensor_map(hom.map, LinMap.identity(n.space)), n.name)


def restrict_bimodule(
    b: Bimodule, left_hom: Optional[AlgebraHom] = None, right_hom: Optional[AlgebraHom] = None
) -> Bimodule:
    left = restrict_left(b.as_left(), left_hom) if left_hom else b.as_left()
    right = restrict_right(b.as_right(), right_hom) if right_hom else b.as_right()
    return Bimodule(left.algebra, right.algebra, b.space, left.action, right.action, b.name)


# Retractions


def _retraction_maps(r: RetractionAlpha):
    phi, psi, alpha = r.phi, r.psi, r.map
    s_alg, r_alg = phi.target, phi.source
    return phi, psi, alpha, s_alg, r_alg


def _ret1(r: RetractionAlpha) -> ConditionResult:
    phi, _, alpha, _, r_alg = _retraction_maps(r)
    return compare_maps("ret1", alpha @ phi.map, r_alg.identity(), describe_basis(r_alg.space))


def _ret2(r: RetractionAlpha) -> ConditionResult:
    phi, _, alpha, s_alg, _ = _retraction_maps(r)
    lhs = alpha @ s_alg.mult @ tensor_map(s_alg.identity(), phi.map @ alpha)
    rhs = alpha @ s_alg.mult
    return compare_maps("ret2", lhs, rhs, describe_basis(s_alg.space, s_alg.space))


def _ret_linear(r: RetractionAlpha) -> ConditionResult:
    phi, psi, alpha, s_alg, r_alg = _retraction_maps(r)
    lhs = alpha @ s_alg.mult @ tensor_map(s_alg.identity(), phi.map @ psi.map)
    rhs = r_alg.mult @ tensor_map(alpha, psi.map)
    return compare_maps("ret-linear", lhs, rhs, describe_basis(s_alg.space, psi.source.space))


def verify_retraction(r: RetractionAlpha) -> Report:
    """
    Check a retraction certificate α: S -> R.

    Conditions:
        ret1: α ∘ φ = 1_R
        ret2: α(s₁·φ(α(s₂))) = α(s₁s₂) for basis s₁, s₂
        ret-linear: α(s·φψ(q)) = α(s)·ψ(q) for basis s, q

    Examples:
        >>> from src.models.algebra import unit_hom
        >>> from src.utils.catalog import complex_to_matrices
        >>> from src.utils.exactla import Field
        >>> phi = complex_to_matrices(Field.rational())
        >>> alpha = LinMap.from_rows(phi.target.space, phi.source.space, [[0, 0, 0, 1], [0, -1, 0, 0]])
        >>> psi = unit_hom(phi.source)
        >>> verify_retraction(RetractionAlpha(phi, psi, alpha)).verdict
        'pass'
    """
    return Report.from_conditions("verify-retraction", [_ret1(r), _ret2(r), _ret_linear(r)])


def verify_retraction_ideal(r: RetractionAlpha) -> Report:
    """
    Alternative retraction criterion: ret1, ret-linear and ker(α) a left ideal of S.

    The kernel basis is listed in the report notes.
    """
    _, _, alpha, s_alg, r_alg = _retraction_maps(r)
    kernel = nullspace(alpha.matrix)
    notes = [f"kernel: {[format_vector(s_alg.field, v) for v in kernel]}"]
    if kernel:
        span = BasedSpace(len(kernel), s_alg.field)
        inclusion = LinMap.from_columns(span, s_alg.space, kernel)
        products = alpha @ s_alg.mult @ tensor_map(s_alg.identity(), inclusion)
        zero = LinMap.zero(products.domain, r_alg.space)
        ideal = compare_maps("ideal", products, zero, describe_basis(s_alg.space, span))
    else:
        ideal = ConditionResult(tag="ideal", passed=True)
    return Report.from_conditions("verify-retraction-ideal", [_ret1(r), _ret_linear(r), ideal], notes=notes)


def _map_from(domain: BasedSpace, codomain: BasedSpace):
    return lambda x: LinMap.from_entries(domain, codomain, x)


def find_algebra_homs(
    source: StructureAlgebra, target: StructureAlgebra, limit: Optional[int] = None
) -> List[AlgebraHom]:
    """
    All unital algebra homomorphisms source -> target over a finite field.

    Unitality is the linear part; multiplicativity filters the candidates.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    as_map = _map_from(source.space, target.space)
    f = source.field
    system = LinearConditionSystem(f, source.dim * target.dim)
    system.add("hom-unit", lambda x: tuple(f.sub(a, b) for a, b in zip(as_map(x)(source.unit), target.unit)))

    def multiplicative(x: Vector) -> bool:
        h = as_map(x)
        return h @ source.mult == target.mult @ tensor_map(h, h)

    found = search(system, multiplicative, "find-homs", limit)
    return [AlgebraHom(source, target, as_map(x)) for x in found]


def find_ring_retractions(phi: AlgebraHom, limit: Optional[int] = None) -> List[RetractionAlpha]:
    """Algebra homomorphisms α: S -> R with α ∘ φ = 1_R (ψ is taken to be 1_R)."""
    s_alg, r_alg = phi.target, phi.source
    as_map = _map_from(s_alg.space, r_alg.space)
    system = LinearConditionSystem(s_alg.field, s_alg.dim * r_alg.dim)
    system.add("ret1", lambda x: (as_map(x) @ phi.map - r_alg.identity()).entries)

    def multiplicative(x: Vector) -> bool:
        a = as_map(x)
        return a @ s_alg.mult == r_alg.mult @ tensor_map(a, a)

    psi = identity_hom(r_alg)
    return [RetractionAlpha(phi, psi, as_map(x)) for x in search(system, multiplicative, "find-retractions", limit)]


def solve_retraction(phi: AlgebraHom, psi: AlgebraHom, limit: Optional[int] = None) -> List[RetractionAlpha]:
    """Retraction certificates: ret1 and ret-linear are linear in α, ret2 filters."""
    s_alg, r_alg = phi.target, phi.source
    as_map = _map_from(s_alg.space, r_alg.space)

    def candidate(x: Vector) -> RetractionAlpha:
        return RetractionAlpha(phi, psi, as_map(x))

    system = LinearConditionSystem(s_alg.field, s_alg.dim * r_alg.dim)
    system.add("ret1", lambda x: (as_map(x) @ phi.map - r_alg.identity()).entries)
    system.add(
        "ret-linear",
        lambda x: (
            as_map(x) @ s_alg.mult @ tensor_map(s_alg.identity(), phi.map @ psi.map)
            - r_alg.mult @ tensor_map(as_map(x), psi.map)
        ).entries,
    )
    found = search(system, lambda x: _ret2(candidate(x)).passed, "solve-retraction", limit)
    return [candidate(x) for x in found]


# Separability idempotents


class SeparabilityContext:
    """
    The spaces and maps behind the Eq1-Eq3 conditions for φ: R -> S.

    Builds S ⊗_R S as an (S, S)-bimodule and (S ⊗_R S) ⊗_R S left to right. Quotient
    coordinates of idempotents always refer to `quotient`.
    """

    def __init__(self, phi: AlgebraHom):
        self.phi = phi
        s_alg = phi.target
        self.algebra = s_alg
        regular = Bimodule.regular(s_alg)
        self.left_part = restrict_bimodule(regular, right_hom=phi)
        self.right_part = restrict_bimodule(regular, left_hom=phi)
        self.quotient, self.bimodule = tensor_bimodules(self.left_part, self.right_part)
        self.triple, _ = tensor_bimodules(restrict_bimodule(self.bimodule, right_hom=phi), self.right_part)

        one = s_alg.identity()
        sigma = self.quotient.section
        project3 = self.triple.projection @ tensor_map(self.quotient.projection, one)
        self.counit = s_alg.mult @ sigma
        self.eq3_lhs = project3 @ tensor_map(one, s_alg.mult, one) @ tensor_map(sigma, sigma)
        self.eq3_rhs = project3 @ tensor_map(one, s_alg.unit_map, one) @ sigma
        logger.debug(f"SeparabilityContext: dim S⊗_R S = {self.quotient.dim}, triple dim = {self.triple.dim}")

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def element_map(self, e: Vector) -> LinMap:
        return LinMap.from_vector(self.quotient.space, e)

    def eq1_sides(self, e: Vector, xi: AlgebraHom) -> Tuple[LinMap, LinMap]:
        """ξ(t)·e and e·ξ(t) as maps T -> S ⊗_R S."""
        e_map = self.element_map(e)
        lhs = self.bimodule.left_action @ tensor_map(xi.map, e_map)
        rhs = self.bimodule.right_action @ tensor_map(e_map, xi.map)
        return lhs, rhs

    def eq2_sides(self, e: Vector) -> Tuple[Vector, Vector]:
        return self.counit(e), self.algebra.unit

    def eq3_sides(self, e: Vector) -> Tuple[Vector, Vector]:
        f = self.algebra.field
        return self.eq3_lhs(tensor_vector(f, e, e)), self.eq3_rhs(e)

    def from_ambient(self, vector: Sequence) -> Vector:
        """Quotient coordinates of an element given in S ⊗ S coordinates."""
        return self.quotient.project(vector)


@lru_cache(maxsize=32)
def sep_context(phi: AlgebraHom) -> SeparabilityContext:
    return SeparabilityContext(phi)


def _check_element(ctx: SeparabilityContext, e: Vector) -> None:
    if len(e) != ctx.dim:
        raise DimensionMismatchError(f"idempotent has {len(e)} coordinates, S ⊗_R S has dimension {ctx.dim}")


def verify_sep_idempotent(e: SepIdempotent) -> Report:
    """
    Check Eq1 (ξ-centrality), Eq2 (multiplication gives 1) and Eq3 (the triple-tensor condition).

    All equalities are tested in the quotients S ⊗_R S and S ⊗_R S ⊗_R S.
    """
    ctx = sep_context(e.base_map)
    _check_element(ctx, e.element)
    f = ctx.algebra.field
    lhs1, rhs1 = ctx.eq1_sides(e.element, e.side_map)
    lhs2, rhs2 = ctx.eq2_sides(e.element)
    lhs3, rhs3 = ctx.eq3_sides(e.element)
    conditions = [
        compare_maps("Eq1", lhs1, rhs1, describe_basis(e.side_map.source.space, unit_space(f))),
        compare_vectors("Eq2", f, lhs2, rhs2, detail="Σ a_i b_i differs from 1"),
        compare_vectors("Eq3", f, lhs3, rhs3, detail="Σ a_i ⊗ b_i a_k ⊗ b_k differs from Σ a_i ⊗ 1 ⊗ b_i"),
    ]
    return Report.from_conditions("verify-idempotent", conditions, notes=[f"dim S⊗_R S = {ctx.dim}"])


def _sep_system(ctx: SeparabilityContext, xi: AlgebraHom) -> LinearConditionSystem:
    f = ctx.algebra.field
    system = LinearConditionSystem(f, ctx.dim)

    def eq1(x: Vector):
        lhs, rhs = ctx.eq1_sides(x, xi)
        return (lhs - rhs).entries

    def eq2(x: Vector):
        lhs, rhs = ctx.eq2_sides(x)
        return tuple(f.sub(a, b) for a, b in zip(lhs, rhs))

    system.add("Eq1", eq1)
    system.add("Eq2", eq2)
    return system


def classical_sep_space(phi: AlgebraHom, xi: AlgebraHom) -> Optional[AffineSpace]:
    """Solutions of Eq1 + Eq2 alone (classical separability idempotents), or None."""
    return linear_space(_sep_system(sep_context(phi), xi), "classical-idempotent")


def solve_sep_idempotent(phi: AlgebraHom, xi: AlgebraHom, limit: Optional[int] = None) -> List[SepIdempotent]:
    """
    All heavy separability idempotents for (φ, ξ) over a finite field.

    Eq1 and Eq2 are linear in e; Eq3 is quadratic and filters the enumerated candidates.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    ctx = sep_context(phi)

    def heavy(x: Vector) -> bool:
        lhs, rhs = ctx.eq3_sides(x)
        return lhs == rhs

    found = search(_sep_system(ctx, xi), heavy, "solve-idempotent", limit)
    return [SepIdempotent(phi, xi, x) for x in found]


# Induced transformation harness


def _delta(ctx: SeparabilityContext, module: RightModule, e: Vector) -> Tuple[QuotientSpace, RightModule, LinMap]:
    """
    δ_N: N -> N ⊗_R S, n ↦ Σ n·a_i ⊗ b_i, with N ⊗_R S as a right S-module.
    """
    phi, s_alg = ctx.phi, ctx.algebra
    one_n = LinMap.identity(module.space)
    q = alg_tensor(restrict_right(module, phi), ctx.right_part.as_left())
    action = q.projection @ tensor_map(one_n, s_alg.mult) @ tensor_map(q.section, s_alg.identity())
    induced = RightModule(s_alg, q.space, action)
    ambient_e = LinMap.from_vector(ctx.quotient.ambient, ctx.quotient.lift(e))
    delta = q.projection @ tensor_map(module.action, s_alg.identity()) @ tensor_map(one_n, ambient_e)
    return q, induced, delta


def induce_delta_and_check(e: SepIdempotent, test_modules: Sequence[RightModule]) -> Report:
    """
    Evaluate the transformation induced by e on each test module.

    Per module N (witness locations are prefixed with the module index):
        module: the action axioms of N
        delta-counit: the counit N ⊗_R S -> N composed with δ_N is the identity
        delta-linear: δ_N is right T-linear through ξ
        delta-heavy: δ applied twice equals n ⊗ s ↦ n ⊗ 1 ⊗ s after δ
    """
    ctx = sep_context(e.base_map)
    _check_element(ctx, e.element)
    s_alg = ctx.algebra
    xi = e.side_map
    results: List[ConditionResult] = []
    for index, module in enumerate(test_modules):
        prefix = (index,)
        for c in check_module(module).conditions:
            results.append(prefixed(c, prefix, tag="module"))
        q, induced, delta = _delta(ctx, module, e.element)
        one_n = LinMap.identity(module.space)
        counit = module.action @ q.section
        results.append(compare_maps("delta-counit", counit @ delta, one_n, prefix=prefix))

        lhs = delta @ module.action @ tensor_map(one_n, xi.map)
        rhs = induced.action @ tensor_map(delta, xi.map)
        results.append(compare_maps("delta-linear", lhs, rhs, prefix=prefix))

        q2, _, delta2 = _delta(ctx, induced, e.element)
        coaction = (
            q2.projection
            @ tensor_map(q.projection, s_alg.identity())
            @ tensor_map(one_n, s_alg.unit_map, s_alg.identity())
            @ q.section
        )
        results.append(compare_maps("delta-heavy", delta2 @ delta, coaction @ delta, prefix=prefix))

    conditions = []
    for tag in ("module", "delta-counit", "delta-linear", "delta-heavy"):
        tagged = [c for c in results if c.tag == tag]
        if tagged:
            conditions.append(combine(tag, tagged))
    return Report.from_conditions("induce-delta", conditions, notes=[f"{len(test_modules)} test module(s)"])
