"""
Linear category service.

This module provides:
- Builders: one-object categories, linear path categories, identity and composite functors,
  functors induced by algebra maps, representable and pulled-back modules
- Axiom checks for categories, functors and category modules
- The coend tensor product M ⊗_R N of a right and a left module
- Extension-of-scalars certificates α (ext1, ext2, ext-left, ext-right): check and search
- Restriction-of-scalars certificates Γ (cond1, cond2, cond3): check and search
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.models.algebra import AlgebraHom, StructureAlgebra
from src.models.category import CatModule, ExtAlpha, LinearCategory, LinearFunctor, ResGamma
from src.schemas.report import ConditionResult, Report
from src.services.report_service import combine, compare_maps, compare_vectors
from src.services.search_service import search
from src.utils.exactla import DimensionMismatchError, Field, Vector
from src.utils.findim import (
    BasedSpace,
    LinearConditionSystem,
    LinMap,
    QuotientSpace,
    direct_sum_space,
    inclusion,
    projection,
    quotient_by,
    tensor_map,
    tensor_space,
    tensor_vector,
)

logger = logging.getLogger(__name__)

ONE_OBJECT = "*"


# Builders


def one_object_category(algebra: StructureAlgebra, obj: str = ONE_OBJECT) -> LinearCategory:
    """The algebra A as a category with one object; composition g ∘ f is the product g·f."""
    return LinearCategory(
        objects=(obj,),
        homs={(obj, obj): algebra.space},
        compose={(obj, obj, obj): algebra.mult},
        identities={obj: algebra.unit},
        field=algebra.field,
        name=algebra.name,
    )


def path_category(field_: Field, n: int) -> LinearCategory:
    """
    The linear path category of 1 -> 2 -> ... -> n: hom(i, j) = k for i <= j, else 0.

    Examples:
        >>> c = path_category(Field.gf(2), 2)
        >>> c.hom("1", "2").dim, c.hom("2", "1").dim
        (1, 0)
    """
    objects = tuple(str(i) for i in range(1, n + 1))
    homs = {}
    for i, a in enumerate(objects):
        for j, b in enumerate(objects):
            homs[(a, b)] = BasedSpace(1, field_, (f"{a}->{b}",)) if i <= j else BasedSpace(0, field_)
    compose = {}
    for a in objects:
        for b in objects:
            for c in objects:
                domain = tensor_space(homs[(b, c)], homs[(a, b)])
                if domain.dim and homs[(a, c)].dim:
                    compose[(a, b, c)] = LinMap.from_rows(domain, homs[(a, c)], [[1]])
                else:
                    compose[(a, b, c)] = LinMap.zero(domain, homs[(a, c)])
    identities = {a: (field_.one,) for a in objects}
    return LinearCategory(objects, homs, compose, identities, field_, name=f"A{n}")


def identity_functor(category: LinearCategory) -> LinearFunctor:
    c = category
    hom_maps = {(a, b): LinMap.identity(c.hom(a, b)) for a in c.objects for b in c.objects}
    return LinearFunctor(c, c, {a: a for a in c.objects}, hom_maps, name=f"id_{c.name}")


def compose_functors(first: LinearFunctor, second: LinearFunctor) -> LinearFunctor:
    """second ∘ first."""
    objects = first.source.objects
    hom_maps = {(a, b): second.on(first(a), first(b)) @ first.on(a, b) for a in objects for b in objects}
    object_map = {a: second(first(a)) for a in objects}
    return LinearFunctor(first.source, second.target, object_map, hom_maps, name=f"{second.name}∘{first.name}")


def hom_functor(hom: AlgebraHom, source: LinearCategory, target: LinearCategory) -> LinearFunctor:
    """The functor between one-object categories induced by an algebra map."""
    (a,), (b,) = source.objects, target.objects
    return LinearFunctor(source, target, {a: b}, {(a, a): hom.map}, name=hom.name)


def pullback_right(phi: LinearFunctor, x: str) -> CatModule:
    """The right module b ↦ S(φb, x) with f·r = f ∘ φ(r)."""
    r_cat, s_cat = phi.source, phi.target
    values = {b: s_cat.hom(phi(b), x) for b in r_cat.objects}
    actions = {}
    for b1 in r_cat.objects:
        for b in r_cat.objects:
            composition = s_cat.compose[(phi(b1), phi(b), x)]
            actions[(b1, b)] = composition @ tensor_map(LinMap.identity(values[b]), phi.on(b1, b))
    return CatModule(r_cat, "right", values, actions, name=f"S(φ-, {x})")


def pullback_left(phi: LinearFunctor, x: str) -> CatModule:
    """The left module b ↦ S(x, φb) with r·g = φ(r) ∘ g."""
    r_cat, s_cat = phi.source, phi.target
    values = {b: s_cat.hom(x, phi(b)) for b in r_cat.objects}
    actions = {}
    for b in r_cat.objects:
        for b1 in r_cat.objects:
            composition = s_cat.compose[(x, phi(b), phi(b1))]
            actions[(b, b1)] = composition @ tensor_map(phi.on(b, b1), LinMap.identity(values[b]))
    return CatModule(r_cat, "left", values, actions, name=f"S({x}, φ-)")


def representable_module(category: LinearCategory, obj: str, variance: str = "right") -> CatModule:
    """hom(−, obj) as a right module, or hom(obj, −) as a left module."""
    ident = identity_functor(category)
    module = pullback_right(ident, obj) if variance == "right" else pullback_left(ident, obj)
    return CatModule(category, module.variance, module.values, module.actions, name=f"H_{obj}")


# Axiom checks


def check_category(c: LinearCategory) -> Report:
    """
    Associativity and identity laws on all basis elements.

    Witness locations start with the object indices involved.
    """
    results: List[ConditionResult] = []
    for ia, a in enumerate(c.objects):
        for ib, b in enumerate(c.objects):
            one_ab = LinMap.identity(c.hom(a, b))
            left = c.compose[(a, b, b)] @ tensor_map(c.identity(b), one_ab)
            right = c.compose[(a, a, b)] @ tensor_map(one_ab, c.identity(a))
            results.append(compare_maps("identity-left", left, one_ab, prefix=(ia, ib)))
            results.append(compare_maps("identity-right", right, one_ab, prefix=(ia, ib)))
            for ic, x in enumerate(c.objects):
                for id_, d in enumerate(c.objects):
                    lhs = c.compose[(a, b, d)] @ tensor_map(c.compose[(b, x, d)], LinMap.identity(c.hom(a, b)))
                    rhs = c.compose[(a, x, d)] @ tensor_map(LinMap.identity(c.hom(x, d)), c.compose[(a, b, x)])
                    results.append(compare_maps("assoc", lhs, rhs, prefix=(ia, ib, ic, id_)))
    return Report.from_conditions("check-category", _grouped(results, ("assoc", "identity-left", "identity-right")))


def check_functor(f: LinearFunctor) -> Report:
    """F(1_a) = 1_{Fa} and F(g ∘ f) = F(g) ∘ F(f) on basis elements."""
    s, t = f.source, f.target
    results: List[ConditionResult] = []
    for ia, a in enumerate(s.objects):
        results.append(
            compare_vectors(
                "functor-identity", s.field, f.on(a, a)(s.identities[a]), t.identities[f(a)], location=(ia,)
            )
        )
        for ib, b in enumerate(s.objects):
            for ic, c in enumerate(s.objects):
                lhs = f.on(a, c) @ s.compose[(a, b, c)]
                rhs = t.compose[(f(a), f(b), f(c))] @ tensor_map(f.on(b, c), f.on(a, b))
                results.append(compare_maps("functor-compose", lhs, rhs, prefix=(ia, ib, ic)))
    return Report.from_conditions("check-functor", _grouped(results, ("functor-identity", "functor-compose")))


def check_cat_module(m: CatModule) -> Report:
    """Functoriality of a category module on basis compositions and identities."""
    c = m.category
    results: List[ConditionResult] = []
    for ia, a in enumerate(c.objects):
        one_a = LinMap.identity(m.value(a))
        if m.variance == "right":
            unit = m.action(a, a) @ tensor_map(one_a, c.identity(a))
        else:
            unit = m.action(a, a) @ tensor_map(c.identity(a), one_a)
        results.append(compare_maps("module-identity", unit, one_a, prefix=(ia,)))
        for ib, b in enumerate(c.objects):
            for ic, x in enumerate(c.objects):
                if m.variance == "right":
                    lhs = m.action(a, x) @ tensor_map(LinMap.identity(m.value(x)), c.compose[(a, b, x)])
                    rhs = m.action(a, b) @ tensor_map(m.action(b, x), LinMap.identity(c.hom(a, b)))
                else:
                    lhs = m.action(a, x) @ tensor_map(c.compose[(a, b, x)], one_a)
                    rhs = m.action(b, x) @ tensor_map(LinMap.identity(c.hom(b, x)), m.action(a, b))
                results.append(compare_maps("module-compose", lhs, rhs, prefix=(ia, ib, ic)))
    return Report.from_conditions("check-cat-module", _grouped(results, ("module-identity", "module-compose")))


def _grouped(results: Sequence[ConditionResult], tags: Sequence[str]) -> List[ConditionResult]:
    return [combine(tag, [r for r in results if r.tag == tag]) for tag in tags]


# Coend tensor product


@dataclass(frozen=True)
class Coend:
    """⨁_a M(a) ⊗ N(a) modulo the relations M(r)(x) ⊗ y − x ⊗ N(r)(y)."""

    objects: Tuple[str, ...]
    summands: Tuple[BasedSpace, ...]
    ambient: BasedSpace
    quotient: QuotientSpace

    @property
    def space(self) -> BasedSpace:
        return self.quotient.space

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def injection(self, a: str) -> LinMap:
        """M(a) ⊗ N(a) -> the coend."""
        return self.quotient.projection @ inclusion(self.summands, self.objects.index(a), self.ambient)

    def block(self, a: str) -> LinMap:
        """The a-component of the chosen representative: coend -> M(a) ⊗ N(a)."""
        return projection(self.summands, self.objects.index(a), self.ambient) @ self.quotient.section


def cat_tensor(m: CatModule, n: CatModule) -> Coend:
    """
    The coend M ⊗_R N of a right module M and a left module N over the same category.

    Relations are taken for each pair of objects (a, b) in object order and each basis
    element of M(b) ⊗ hom(a, b) ⊗ N(a).

    Raises:
        DimensionMismatchError: Wrong variances or different categories
    """
    if m.variance != "right" or n.variance != "left":
        raise DimensionMismatchError("cat_tensor needs a right module and a left module")
    if m.category.objects != n.category.objects:
        raise DimensionMismatchError("cat_tensor needs modules over the same category")
    c = m.category
    objects = c.objects
    summands = tuple(tensor_space(m.value(a), n.value(a)) for a in objects)
    ambient, _ = direct_sum_space(summands, field=c.field)
    columns = []
    for ia, a in enumerate(objects):
        for ib, b in enumerate(objects):
            left = inclusion(summands, ia, ambient) @ tensor_map(m.action(a, b), LinMap.identity(n.value(a)))
            right = inclusion(summands, ib, ambient) @ tensor_map(LinMap.identity(m.value(b)), n.action(a, b))
            relations = (left - right).matrix.transpose()
            columns.extend(relations.sparse_row(j) for j in range(relations.rows))
    quotient = quotient_by(ambient, columns)
    logger.debug(f"cat_tensor: ambient dim {ambient.dim}, {len(columns)} relations, coend dim {quotient.dim}")
    return Coend(objects, summands, ambient, quotient)


def _total(maps: Sequence[LinMap], domain: BasedSpace, codomain: BasedSpace) -> LinMap:
    result = LinMap.zero(domain, codomain)
    for m in maps:
        result = result + m
    return result


# Extension of scalars: α certificates


def _ext_results(alpha: ExtAlpha) -> List[ConditionResult]:
    psi, phi = alpha.psi, alpha.phi
    q_cat, r_cat, s_cat = psi.source, phi.source, phi.target
    comp_r, comp_s = r_cat.compose, s_cat.compose
    phipsi = compose_functors(psi, phi)
    comp = alpha.components
    results: List[ConditionResult] = []
    for ia, a in enumerate(q_cat.objects):
        pa = psi(a)
        for ib, b in enumerate(r_cat.objects):
            results.append(
                compare_maps("ext1", comp[(a, b)] @ phi.on(pa, b), LinMap.identity(r_cat.hom(pa, b)), prefix=(ia, ib))
            )
            for ic, c in enumerate(r_cat.objects):
                composition = comp_s[(phi(pa), phi(b), phi(c))]
                one_bc = LinMap.identity(s_cat.hom(phi(b), phi(c)))
                lhs = comp[(a, c)] @ composition
                rhs = comp[(a, c)] @ composition @ tensor_map(one_bc, phi.on(pa, b) @ comp[(a, b)])
                results.append(compare_maps("ext2", lhs, rhs, prefix=(ia, ib, ic)))

                one_s = LinMap.identity(s_cat.hom(phi(pa), phi(b)))
                lhs = comp[(a, c)] @ composition @ tensor_map(phi.on(b, c), one_s)
                rhs = comp_r[(pa, b, c)] @ tensor_map(LinMap.identity(r_cat.hom(b, c)), comp[(a, b)])
                results.append(compare_maps("ext-left", lhs, rhs, prefix=(ia, ib, ic)))
            for ia1, a1 in enumerate(q_cat.objects):
                pa1 = psi(a1)
                one_s = LinMap.identity(s_cat.hom(phi(pa), phi(b)))
                lhs = comp[(a1, b)] @ comp_s[(phi(pa1), phi(pa), phi(b))] @ tensor_map(one_s, phipsi.on(a1, a))
                rhs = comp_r[(pa1, pa, b)] @ tensor_map(comp[(a, b)], psi.on(a1, a))
                results.append(compare_maps("ext-right", lhs, rhs, prefix=(ia1, ia, ib)))
    return results


EXT_TAGS = ("ext1", "ext2", "ext-left", "ext-right")


def check_ext_certificate(alpha: ExtAlpha) -> Report:
    """
    Check a certificate α for heavy ψ*-separability of φ*.

    Conditions:
        ext1: α ∘ φ = 1 on every R(ψa, b)
        ext2: α_{a,c}(g ∘ f) = α_{a,c}(g ∘ φ(α_{a,b}(f)))
        ext-left: α_{a,c}(φ(r) ∘ f) = r ∘ α_{a,b}(f)
        ext-right: α_{a',b}(f ∘ φψ(q)) = α_{a,b}(f) ∘ ψ(q)
    """
    return Report.from_conditions("check-ext", _grouped(_ext_results(alpha), EXT_TAGS))


def _ext_layout(psi: LinearFunctor, phi: LinearFunctor) -> List[Tuple[Tuple[str, str], BasedSpace, BasedSpace]]:
    layout = []
    for a in psi.source.objects:
        for b in phi.source.objects:
            layout.append(((a, b), phi.target.hom(phi(psi(a)), phi(b)), phi.source.hom(psi(a), b)))
    return layout


def ext_from_vector(psi: LinearFunctor, phi: LinearFunctor, x: Sequence) -> ExtAlpha:
    """Components α_{a,b} read from one flat vector, blocks in (a, b) object order, each row-major."""
    components = {}
    offset = 0
    for key, domain, codomain in _ext_layout(psi, phi):
        size = domain.dim * codomain.dim
        components[key] = LinMap.from_entries(domain, codomain, tuple(x[offset:offset + size]))
        offset += size
    if offset != len(x):
        raise DimensionMismatchError(f"α needs {offset} coordinates, got {len(x)}")
    return ExtAlpha(psi, phi, components)


def solve_ext_certificate(psi: LinearFunctor, phi: LinearFunctor, limit: Optional[int] = None) -> List[ExtAlpha]:
    """
    All α certificates over a finite field: ext1, ext-left and ext-right are linear, ext2 filters.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    unknowns = sum(d.dim * c.dim for _, d, c in _ext_layout(psi, phi))
    system = LinearConditionSystem(phi.target.field, unknowns)
    for tag in ("ext1", "ext-left", "ext-right"):
        system.add(tag, _ext_residual(psi, phi, tag))

    def heavy(x: Vector) -> bool:
        return all(r.passed for r in _ext_results(ext_from_vector(psi, phi, x)) if r.tag == "ext2")

    return [ext_from_vector(psi, phi, x) for x in search(system, heavy, "solve-ext", limit)]


def _ext_residual(psi: LinearFunctor, phi: LinearFunctor, tag: str):
    """Residual of one linear α condition; stacks lhs - rhs of every instance."""

    def residual(x: Vector) -> Vector:
        alpha = ext_from_vector(psi, phi, x)
        return tuple(v for lhs, rhs in _ext_sides(alpha, tag) for v in (lhs - rhs).entries)

    return residual


def _ext_sides(alpha: ExtAlpha, tag: str) -> List[Tuple[LinMap, LinMap]]:
    psi, phi = alpha.psi, alpha.phi
    q_cat, r_cat, s_cat = psi.source, phi.source, phi.target
    comp = alpha.components
    sides = []
    for a in q_cat.objects:
        pa = psi(a)
        for b in r_cat.objects:
            one_s = LinMap.identity(s_cat.hom(phi(pa), phi(b)))
            if tag == "ext1":
                sides.append((comp[(a, b)] @ phi.on(pa, b), LinMap.identity(r_cat.hom(pa, b))))
            elif tag == "ext-left":
                for c in r_cat.objects:
                    lhs = comp[(a, c)] @ s_cat.compose[(phi(pa), phi(b), phi(c))] @ tensor_map(phi.on(b, c), one_s)
                    rhs = r_cat.compose[(pa, b, c)] @ tensor_map(LinMap.identity(r_cat.hom(b, c)), comp[(a, b)])
                    sides.append((lhs, rhs))
            elif tag == "ext-right":
                for a1 in q_cat.objects:
                    pa1 = psi(a1)
                    phipsi = phi.on(pa1, pa) @ psi.on(a1, a)
                    lhs = comp[(a1, b)] @ s_cat.compose[(phi(pa1), phi(pa), phi(b))] @ tensor_map(one_s, phipsi)
                    rhs = r_cat.compose[(pa1, pa, b)] @ tensor_map(comp[(a, b)], psi.on(a1, a))
                    sides.append((lhs, rhs))
    return sides


# Restriction of scalars: Γ certificates


class RestrictionContext:
    """
    Coends and fixed linear maps behind cond1-cond3 for φ: R -> S and ξ: T -> S.

    For each object a of T: M_a = S(φ−, ξa) (right), N_a = S(ξa, φ−) (left) and the coend
    Γ_a lives in. cond3 lives in P_a ⊗_R N_a where P_a(d) = M_a ⊗_R S(φd, φ−).
    """

    def __init__(self, phi: LinearFunctor, xi: LinearFunctor):
        self.phi = phi
        self.xi = xi
        self.r_cat, self.s_cat, self.t_cat = phi.source, phi.target, xi.source
        self.right = {a: pullback_right(phi, xi(a)) for a in self.t_cat.objects}
        self.left = {a: pullback_left(phi, xi(a)) for a in self.t_cat.objects}
        self.coends = {a: cat_tensor(self.right[a], self.left[a]) for a in self.t_cat.objects}
        self._mixed: Dict[Tuple[str, str], Coend] = {}
        self._cond1: Dict[Tuple[str, str], Tuple[LinMap, LinMap]] = {}
        self._composition: Dict[str, LinMap] = {}
        self._triple: Dict[str, Tuple[Coend, LinMap, LinMap]] = {}
        logger.debug(f"RestrictionContext: coend dims {[c.dim for c in self.coends.values()]}")

    @property
    def field(self) -> Field:
        return self.s_cat.field

    @property
    def layout(self) -> List[Tuple[str, int]]:
        return [(a, self.coends[a].dim) for a in self.t_cat.objects]

    def mixed(self, c: str, a: str) -> Coend:
        """S(φ−, ξa) ⊗_R S(ξc, φ−), where both sides of cond1 for t ∈ T(c, a) live."""
        if (c, a) not in self._mixed:
            self._mixed[(c, a)] = cat_tensor(self.right[a], self.left[c])
        return self._mixed[(c, a)]

    def element_map(self, a: str, element: Vector) -> LinMap:
        return LinMap.from_vector(self.coends[a].space, element)

    def from_ambient(self, a: str, vector: Sequence) -> Vector:
        """Coend coordinates of an element given in ⨁_b M_a(b) ⊗ N_a(b) coordinates."""
        return self.coends[a].quotient.project(vector)

    # cond1

    def cond1_sides(self, c: str, a: str, gamma_c: Vector, gamma_a: Vector) -> Tuple[LinMap, LinMap]:
        """Both sides as maps T(c, a) -> S(φ−, ξa) ⊗_R S(ξc, φ−)."""
        if (c, a) not in self._cond1:
            self._cond1[(c, a)] = self._cond1_maps(c, a)
        lhs_map, rhs_map = self._cond1[(c, a)]
        one_t = LinMap.identity(self.t_cat.hom(c, a))
        lhs = lhs_map @ tensor_map(one_t, self.element_map(c, gamma_c))
        rhs = rhs_map @ tensor_map(self.element_map(a, gamma_a), one_t)
        return lhs, rhs

    def _cond1_maps(self, c: str, a: str) -> Tuple[LinMap, LinMap]:
        s_cat, phi, xi = self.s_cat, self.phi, self.xi
        xc, xa = xi(c), xi(a)
        t_space = self.t_cat.hom(c, a)
        one_t = LinMap.identity(t_space)
        target = self.mixed(c, a)
        source_c, source_a = self.coends[c], self.coends[a]
        lhs_parts, rhs_parts = [], []
        for b in self.r_cat.objects:
            pb = phi(b)
            post = s_cat.compose[(pb, xc, xa)] @ tensor_map(xi.on(c, a), LinMap.identity(s_cat.hom(pb, xc)))
            block = tensor_map(post, LinMap.identity(s_cat.hom(xc, pb)))
            lhs_parts.append(target.injection(b) @ block @ tensor_map(one_t, source_c.block(b)))
            pre = s_cat.compose[(xc, xa, pb)] @ tensor_map(LinMap.identity(s_cat.hom(xa, pb)), xi.on(c, a))
            block = tensor_map(LinMap.identity(s_cat.hom(pb, xa)), pre)
            rhs_parts.append(target.injection(b) @ block @ tensor_map(source_a.block(b), one_t))
        lhs_map = _total(lhs_parts, tensor_space(t_space, source_c.space), target.space)
        rhs_map = _total(rhs_parts, tensor_space(source_a.space, t_space), target.space)
        return lhs_map, rhs_map

    # cond2

    def composition_map(self, a: str) -> LinMap:
        """Σ_b f ⊗ g ↦ Σ_b f ∘ g from the coend of a to S(ξa, ξa)."""
        if a not in self._composition:
            xa = self.xi(a)
            coend = self.coends[a]
            parts = [self.s_cat.compose[(xa, self.phi(b), xa)] @ coend.block(b) for b in self.r_cat.objects]
            self._composition[a] = _total(parts, coend.space, self.s_cat.hom(xa, xa))
        return self._composition[a]

    def cond2_sides(self, a: str, gamma_a: Vector) -> Tuple[Vector, Vector]:
        return self.composition_map(a)(gamma_a), self.s_cat.identities[self.xi(a)]

    # cond3

    def triple(self, a: str) -> Tuple[Coend, LinMap, LinMap]:
        """
        The coend P_a ⊗_R N_a with the bilinear left-hand side (coend ⊗ coend -> it) and the
        linear right-hand side (coend -> it) of cond3.
        """
        if a not in self._triple:
            self._triple[a] = self._triple_maps(a)
        return self._triple[a]

    def _triple_maps(self, a: str) -> Tuple[Coend, LinMap, LinMap]:
        s_cat, phi, r_cat = self.s_cat, self.phi, self.r_cat
        xa = self.xi(a)
        m_a, n_a = self.right[a], self.left[a]
        inner = {d: cat_tensor(m_a, pullback_left(phi, phi(d))) for d in r_cat.objects}
        actions = {}
        for d1 in r_cat.objects:
            for d in r_cat.objects:
                parts = []
                for b in r_cat.objects:
                    pb = phi(b)
                    tail = s_cat.compose[(phi(d1), phi(d), pb)] @ tensor_map(
                        LinMap.identity(s_cat.hom(phi(d), pb)), phi.on(d1, d)
                    )
                    block = tensor_map(LinMap.identity(m_a.value(b)), tail)
                    one_r = LinMap.identity(r_cat.hom(d1, d))
                    parts.append(inner[d1].injection(b) @ block @ tensor_map(inner[d].block(b), one_r))
                domain = tensor_space(inner[d].space, r_cat.hom(d1, d))
                actions[(d1, d)] = _total(parts, domain, inner[d1].space)
        p_a = CatModule(r_cat, "right", {d: inner[d].space for d in r_cat.objects}, actions, name=f"P_{a}")
        outer = cat_tensor(p_a, n_a)
        coend = self.coends[a]

        lhs_parts, rhs_parts = [], []
        for d in r_cat.objects:
            into_outer = outer.injection(d)
            for b in r_cat.objects:
                pd, pb = phi(d), phi(b)
                one_m, one_n = LinMap.identity(m_a.value(b)), LinMap.identity(n_a.value(d))
                middle = tensor_map(one_m, s_cat.compose[(pd, xa, pb)], one_n)
                lift = tensor_map(inner[d].injection(b), LinMap.identity(n_a.value(d)))
                lhs_parts.append(into_outer @ lift @ middle @ tensor_map(coend.block(b), coend.block(d)))
            unit = tensor_map(LinMap.identity(m_a.value(d)), s_cat.identity(phi(d)), LinMap.identity(n_a.value(d)))
            lift = tensor_map(inner[d].injection(d), LinMap.identity(n_a.value(d)))
            rhs_parts.append(into_outer @ lift @ unit @ coend.block(d))
        lhs = _total(lhs_parts, tensor_space(coend.space, coend.space), outer.space)
        rhs = _total(rhs_parts, coend.space, outer.space)
        logger.debug(f"RestrictionContext.triple({a}): dim {outer.dim}")
        return outer, lhs, rhs

    def cond3_sides(self, a: str, gamma_a: Vector) -> Tuple[Vector, Vector]:
        _, lhs, rhs = self.triple(a)
        return lhs(tensor_vector(self.field, gamma_a, gamma_a)), rhs(gamma_a)


@lru_cache(maxsize=16)
def restriction_context(phi: LinearFunctor, xi: LinearFunctor) -> RestrictionContext:
    return RestrictionContext(phi, xi)


def _check_elements(ctx: RestrictionContext, gamma: ResGamma) -> None:
    for a, dim in ctx.layout:
        if len(gamma.elements[a]) != dim:
            found = len(gamma.elements[a])
            raise DimensionMismatchError(f"Γ_{a} has {found} coordinates, its coend has dimension {dim}")


def _res_results(ctx: RestrictionContext, elements: Dict[str, Vector], tags: Sequence[str]) -> List[ConditionResult]:
    f = ctx.field
    objects = ctx.t_cat.objects
    results: List[ConditionResult] = []
    for ia, a in enumerate(objects):
        if "cond1" in tags:
            for ic, c in enumerate(objects):
                lhs, rhs = ctx.cond1_sides(c, a, elements[c], elements[a])
                results.append(compare_maps("cond1", lhs, rhs, prefix=(ic, ia)))
        if "cond2" in tags:
            lhs, rhs = ctx.cond2_sides(a, elements[a])
            detail = f"Σ f ∘ g differs from 1 at {a}"
            results.append(compare_vectors("cond2", f, lhs, rhs, location=(ia,), detail=detail))
        if "cond3" in tags:
            lhs, rhs = ctx.cond3_sides(a, elements[a])
            results.append(compare_vectors("cond3", f, lhs, rhs, location=(ia,), detail=f"double coends differ at {a}"))
    return results


RES_TAGS = ("cond1", "cond2", "cond3")


def check_res_certificate(gamma: ResGamma) -> Report:
    """
    Check a certificate Γ for heavy ξ*-separability of φ*.

    Conditions:
        cond1: (ξ(t) ∘ f) ⊗ g summed over Γ_c equals f ⊗ (g ∘ ξ(t)) summed over Γ_a, per t ∈ T(c, a)
        cond2: Σ f ∘ g = 1_{ξa}
        cond3: Σ (f ⊗ (g ∘ f')) ⊗ g' = Σ (f ⊗ 1) ⊗ g in the double coend
    """
    ctx = restriction_context(gamma.phi, gamma.xi)
    _check_elements(ctx, gamma)
    conditions = _grouped(_res_results(ctx, gamma.elements, RES_TAGS), RES_TAGS)
    notes = [f"coend dims {dict(ctx.layout)}"]
    return Report.from_conditions("check-res", conditions, notes=notes)


def res_from_vector(ctx: RestrictionContext, x: Sequence) -> ResGamma:
    elements = {}
    offset = 0
    for a, dim in ctx.layout:
        elements[a] = tuple(x[offset:offset + dim])
        offset += dim
    return ResGamma(ctx.phi, ctx.xi, elements)


def solve_res_certificate(phi: LinearFunctor, xi: LinearFunctor, limit: Optional[int] = None) -> List[ResGamma]:
    """
    All Γ certificates over a finite field: cond1 and cond2 are linear, cond3 filters.

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    ctx = restriction_context(phi, xi)
    f = ctx.field
    system = LinearConditionSystem(f, sum(dim for _, dim in ctx.layout))

    def residual(tag: str):
        def apply(x: Vector) -> Vector:
            elements = res_from_vector(ctx, x).elements
            out: List = []
            for a in ctx.t_cat.objects:
                if tag == "cond1":
                    for c in ctx.t_cat.objects:
                        lhs, rhs = ctx.cond1_sides(c, a, elements[c], elements[a])
                        out.extend((lhs - rhs).entries)
                else:
                    lhs_v, rhs_v = ctx.cond2_sides(a, elements[a])
                    out.extend(f.sub(p, q) for p, q in zip(lhs_v, rhs_v))
            return tuple(out)

        return apply

    system.add("cond1", residual("cond1"))
    system.add("cond2", residual("cond2"))

    def heavy(x: Vector) -> bool:
        elements = res_from_vector(ctx, x).elements
        return all(r.passed for r in _res_results(ctx, elements, ("cond3",)))

    return [res_from_vector(ctx, x) for x in search(system, heavy, "solve-res", limit)]


def solutions_as_vectors(gammas: Sequence[ResGamma]) -> List[Vector]:
    """Flatten Γ certificates into one coordinate vector each, blocks in object order."""
    return [tuple(v for a in g.xi.source.objects for v in g.elements[a]) for g in gammas]


def ext_as_vectors(alphas: Sequence[ExtAlpha]) -> List[Vector]:
    return [tuple(v for key, _, _ in _ext_layout(a.psi, a.phi) for v in a.components[key].entries) for a in alphas]


def identity_gamma(phi: LinearFunctor) -> ResGamma:
    """Γ_a = 1_a ⊗ 1_a for φ = ξ = the identity functor of a category."""
    ctx = restriction_context(phi, phi)
    elements = {}
    for a in phi.source.objects:
        coend = ctx.coends[a]
        one = phi.target.identities[a]
        vector = tensor_vector(ctx.field, one, one)
        elements[a] = coend.injection(a)(vector)
    return ResGamma(phi, phi, elements)
