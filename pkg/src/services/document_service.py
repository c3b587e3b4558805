"""
Document service: parse input documents, resolve their definitions and run their tasks.

This module provides:
- parse_spec: read and validate a document (schema, names, shapes, modulus)
- Workspace: lazily builds the named structures and certificates of a document
- run_tasks: one Report per task, in document order
- dump: re-serialize a document (parse_spec(dump(doc)) == doc)
"""

import inspect
import json
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

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
from src.models.category import CatModule, ExtAlpha, LinearCategory, LinearFunctor, ResGamma
from src.models.coalgebra import Coring, GrouplikeElement, RightComodule, StructureCoalgebra
from src.models.entwining import EntwiningStructure, ThetaMap, ZetaMap
from src.schemas.document import Certificate, Definition, SpecDocument, TaskSpec
from src.schemas.report import ConditionResult, Report
from src.services import algmod_service, coring_service, entwine_service, precat_service
from src.services.report_service import (
    apply_expectation,
    compare_maps,
    failure,
    format_vector,
    prefixed,
    solver_report,
)
from src.utils import catalog
from src.utils.exactla import DimensionMismatchError, ExactLAError, Field, LimitExceeded, Vector
from src.utils.findim import BasedSpace, LinMap, tensor_space, unit_space

logger = logging.getLogger(__name__)


class SpecError(Exception):
    """Exception raised for malformed documents; `location` is a dotted path such as definitions.phi.matrix."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


# Builtins of the category level; the ring level lives in src.utils.catalog.
def regular_module(algebra: StructureAlgebra, side: str = "right") -> Union[RightModule, LeftModule, Bimodule]:
    """A as a module over itself on the given side."""
    if side == "left":
        return LeftModule.regular(algebra)
    if side == "bimodule":
        return Bimodule.regular(algebra)
    return RightModule.regular(algebra)


MODULE_BUILDERS: Dict[str, Callable[..., Any]] = {
    "regular": regular_module,
}

COMODULE_BUILDERS: Dict[str, Callable[..., Any]] = {
    "regular": RightComodule.regular,
}

CORING_BUILDERS: Dict[str, Callable[..., Coring]] = {
    "sweedler": coring_service.sweedler_coring,
    "trivial": coring_service.trivial_coring,
    "coalgebra": coring_service.coalgebra_as_coring,
}

CATEGORY_BUILDERS: Dict[str, Callable[..., LinearCategory]] = {
    "one_object": precat_service.one_object_category,
    "path": precat_service.path_category,
}

FUNCTOR_BUILDERS: Dict[str, Callable[..., LinearFunctor]] = {
    "identity": precat_service.identity_functor,
    "compose": precat_service.compose_functors,
    "from_hom": precat_service.hom_functor,
}

CAT_MODULE_BUILDERS: Dict[str, Callable[..., CatModule]] = {
    "representable": precat_service.representable_module,
}

BUILDERS: Dict[str, Dict[str, Callable[..., Any]]] = {
    "algebra": catalog.ALGEBRA_BUILDERS,
    "coalgebra": catalog.COALGEBRA_BUILDERS,
    "hom": catalog.HOM_BUILDERS,
    "entwining": catalog.ENTWINING_BUILDERS,
    "module": MODULE_BUILDERS,
    "comodule": COMODULE_BUILDERS,
    "coring": CORING_BUILDERS,
    "category": CATEGORY_BUILDERS,
    "functor": FUNCTOR_BUILDERS,
    "cat-module": CAT_MODULE_BUILDERS,
}

EXPECTED_TYPES: Dict[str, Union[type, Tuple[type, ...]]] = {
    "algebra": StructureAlgebra,
    "coalgebra": StructureCoalgebra,
    "hom": AlgebraHom,
    "module": (RightModule, LeftModule, Bimodule),
    "comodule": RightComodule,
    "coring": Coring,
    "entwining": EntwiningStructure,
    "category": LinearCategory,
    "functor": LinearFunctor,
    "cat-module": CatModule,
}


def _key(*names: str) -> str:
    return ",".join(names)


class Workspace:
    """
    Structures and certificates of one document, built on first use.

    Raises:
        SpecError: On the first unresolved name, cycle, malformed matrix or shape mismatch
    """

    def __init__(self, doc: SpecDocument):
        self.doc = doc
        try:
            self.field = Field.parse(doc.field)
        except ValueError as e:
            raise SpecError("field", str(e)) from e
        self._built: Dict[str, Any] = {}
        self._building: List[str] = []

    # Resolution

    def resolve(self, name: Optional[str], expected: str, location: str) -> Any:
        """The structure or certificate called `name`, which must be declared with type `expected`."""
        if name is None:
            raise SpecError(location, f"missing reference to a {expected}")
        declared = self.doc.definitions.get(name) or self.doc.certificates.get(name)
        if declared is None:
            raise SpecError(location, f"unknown name {name!r}")
        if declared.type != expected:
            raise SpecError(location, f"{name!r} is a {declared.type}, expected a {expected}")
        if name in self._built:
            return self._built[name]
        if name in self._building:
            raise SpecError(location, f"circular reference through {' -> '.join(self._building + [name])}")
        self._building.append(name)
        try:
            if isinstance(declared, Definition):
                value = self._build_definition(name, declared)
            else:
                value = self._build_certificate(name, declared)
        except (ExactLAError, ValueError, KeyError, TypeError) as e:
            raise SpecError(self._origin(name), f"{type(e).__name__}: {e}") from e
        finally:
            self._building.pop()
        self._built[name] = value
        logger.debug(f"Built {declared.type} {name!r}")
        return value

    def algebra_map(self, name: Optional[str], location: str) -> AlgebraHom:
        """The hom called `name`, which must be a unital algebra map."""
        h = self.resolve(name, "hom", location)
        report = algmod_service.check_hom(h)
        if not report.passed:
            raise SpecError(location, f"{name!r} is not a unital algebra map: fails {report.failed_tags()}")
        return h

    def _origin(self, name: str) -> str:
        section = "definitions" if name in self.doc.definitions else "certificates"
        return f"{section}.{name}"

    def build_all(self) -> None:
        for name, d in self.doc.definitions.items():
            self.resolve(name, d.type, f"definitions.{name}")
        for name, c in self.doc.certificates.items():
            self.resolve(name, c.type, f"certificates.{name}")

    # Parsing helpers

    def _vector(self, values: Optional[Sequence], dim: int, location: str) -> Vector:
        if values is None:
            raise SpecError(location, "missing vector")
        if len(values) != dim:
            raise SpecError(location, f"expected {dim} coordinates, got {len(values)}")
        try:
            return tuple(self.field.coerce(v) for v in values)
        except ValueError as e:
            raise SpecError(location, str(e)) from e

    def _map(self, rows: Optional[Sequence], domain: BasedSpace, codomain: BasedSpace, location: str) -> LinMap:
        if rows is None:
            raise SpecError(location, "missing matrix")
        if len(rows) != codomain.dim:
            raise SpecError(location, f"expected {codomain.dim} rows, got {len(rows)}")
        try:
            return LinMap.from_rows(domain, codomain, rows)
        except (ValueError, DimensionMismatchError) as e:
            raise SpecError(location, str(e)) from e

    def _space(self, d: Definition, location: str) -> BasedSpace:
        if d.basis is not None:
            if d.dim is not None and d.dim != len(d.basis):
                raise SpecError(location, f"dim {d.dim} disagrees with {len(d.basis)} basis labels")
            return BasedSpace(len(d.basis), self.field, tuple(d.basis))
        if d.dim is None:
            raise SpecError(location, "needs basis or dim")
        return BasedSpace(d.dim, self.field)

    def _builtin(self, d: Definition, location: str) -> Any:
        registry = BUILDERS[d.type]
        builder = registry.get(d.builtin)
        if builder is None:
            raise SpecError(f"{location}.builtin", f"unknown {d.type} builtin {d.builtin!r}; known: {sorted(registry)}")
        args = {}
        for key, value in (d.args or {}).items():
            if isinstance(value, str) and (value in self.doc.definitions):
                value = self.resolve(value, self.doc.definitions[value].type, f"{location}.args.{key}")
            args[key] = value
        params = list(inspect.signature(builder).parameters)
        if params and params[0] == "field_":
            args["field_"] = self.field
        try:
            return builder(**args)
        except TypeError as e:
            raise SpecError(f"{location}.args", str(e)) from e

    # Definitions

    def _build_definition(self, name: str, d: Definition) -> Any:
        location = f"definitions.{name}"
        if d.builtin is not None:
            value = self._builtin(d, location)
            if not isinstance(value, EXPECTED_TYPES[d.type]):
                raise SpecError(f"{location}.builtin", f"{d.builtin!r} does not build a {d.type}")
            return value
        return getattr(self, f"_explicit_{d.type.replace('-', '_')}")(name, d, location)

    def _explicit_algebra(self, name: str, d: Definition, location: str) -> StructureAlgebra:
        space = self._space(d, location)
        mult = self._map(d.mult, tensor_space(space, space), space, f"{location}.mult")
        unit = self._vector(d.unit, space.dim, f"{location}.unit")
        return StructureAlgebra(space, mult, unit, name)

    def _explicit_coalgebra(self, name: str, d: Definition, location: str) -> StructureCoalgebra:
        space = self._space(d, location)
        comult = self._map(d.comult, space, tensor_space(space, space), f"{location}.comult")
        counit = self._map(d.counit, space, unit_space(self.field), f"{location}.counit")
        return StructureCoalgebra(space, comult, counit, name)

    def _explicit_hom(self, name: str, d: Definition, location: str) -> AlgebraHom:
        source = self.resolve(d.source, "algebra", f"{location}.source")
        target = self.resolve(d.target, "algebra", f"{location}.target")
        return AlgebraHom(source, target, self._map(d.matrix, source.space, target.space, f"{location}.matrix"), name)

    def _explicit_module(self, name: str, d: Definition, location: str) -> Any:
        algebra = self.resolve(d.algebra, "algebra", f"{location}.algebra")
        space = self._space(d, location)
        a = algebra.space
        if d.side == "bimodule":
            left_action = self._map(d.left_action, tensor_space(a, space), space, f"{location}.left_action")
            right_action = self._map(d.right_action, tensor_space(space, a), space, f"{location}.right_action")
            return Bimodule(algebra, algebra, space, left_action, right_action, name)
        if d.side == "left":
            action = self._map(d.action, tensor_space(a, space), space, f"{location}.action")
            return LeftModule(algebra, space, action, name)
        action = self._map(d.action, tensor_space(space, a), space, f"{location}.action")
        return RightModule(algebra, space, action, name)

    def _explicit_comodule(self, name: str, d: Definition, location: str) -> RightComodule:
        coalgebra = self.resolve(d.coalgebra, "coalgebra", f"{location}.coalgebra")
        space = self._space(d, location)
        coaction = self._map(d.coaction, space, tensor_space(space, coalgebra.space), f"{location}.coaction")
        return RightComodule(coalgebra, space, coaction, name)

    def _explicit_coring(self, name: str, d: Definition, location: str) -> Coring:
        base = self.resolve(d.algebra, "algebra", f"{location}.algebra")
        space = self._space(d, location)
        left_action = self._map(d.left_action, tensor_space(base.space, space), space, f"{location}.left_action")
        right_action = self._map(d.right_action, tensor_space(space, base.space), space, f"{location}.right_action")
        comult = self._map(d.comult, space, tensor_space(space, space), f"{location}.comult")
        counit = self._map(d.counit, space, base.space, f"{location}.counit")
        return Coring(base, Bimodule(base, base, space, left_action, right_action, name), comult, counit, name)

    def _explicit_entwining(self, name: str, d: Definition, location: str) -> EntwiningStructure:
        a = self.resolve(d.algebra, "algebra", f"{location}.algebra")
        c = self.resolve(d.coalgebra, "coalgebra", f"{location}.coalgebra")
        psi = self._map(d.psi, tensor_space(c.space, a.space), tensor_space(a.space, c.space), f"{location}.psi")
        return EntwiningStructure(a, c, psi, name)

    def _explicit_category(self, name: str, d: Definition, location: str) -> LinearCategory:
        if not d.objects:
            raise SpecError(f"{location}.objects", "a category needs objects")
        objects = tuple(d.objects)
        homs_in, compose_in, identities_in = d.homs or {}, d.compose or {}, d.identities or {}
        homs = {}
        for a in objects:
            for b in objects:
                homs[(a, b)] = BasedSpace(homs_in.get(_key(a, b), 0), self.field)
        compose = {}
        for a in objects:
            for b in objects:
                for c in objects:
                    domain, codomain = tensor_space(homs[(b, c)], homs[(a, b)]), homs[(a, c)]
                    rows = compose_in.get(_key(a, b, c))
                    if rows is None and not (domain.dim and codomain.dim):
                        compose[(a, b, c)] = LinMap.zero(domain, codomain)
                    else:
                        compose[(a, b, c)] = self._map(rows, domain, codomain, f"{location}.compose.{_key(a, b, c)}")
        identities = {}
        for a in objects:
            identities[a] = self._vector(identities_in.get(a), homs[(a, a)].dim, f"{location}.identities.{a}")
        return LinearCategory(objects, homs, compose, identities, self.field, name)

    def _explicit_functor(self, name: str, d: Definition, location: str) -> LinearFunctor:
        source = self.resolve(d.source, "category", f"{location}.source")
        target = self.resolve(d.target, "category", f"{location}.target")
        object_map = dict(d.object_map or {})
        missing = [a for a in source.objects if object_map.get(a) not in target.objects]
        if missing:
            raise SpecError(f"{location}.object_map", f"objects without a valid image: {missing}")
        hom_maps = {}
        for a in source.objects:
            for b in source.objects:
                domain, codomain = source.hom(a, b), target.hom(object_map[a], object_map[b])
                rows = (d.hom_maps or {}).get(_key(a, b))
                if rows is None and not (domain.dim and codomain.dim):
                    hom_maps[(a, b)] = LinMap.zero(domain, codomain)
                else:
                    hom_maps[(a, b)] = self._map(rows, domain, codomain, f"{location}.hom_maps.{_key(a, b)}")
        return LinearFunctor(source, target, object_map, hom_maps, name)

    def _explicit_cat_module(self, name: str, d: Definition, location: str) -> CatModule:
        c = self.resolve(d.category, "category", f"{location}.category")
        variance = "left" if d.side == "left" else "right"
        values = {a: BasedSpace((d.values or {}).get(a, 0), self.field) for a in c.objects}
        actions = {}
        for a in c.objects:
            for b in c.objects:
                if variance == "right":
                    domain, codomain = tensor_space(values[b], c.hom(a, b)), values[a]
                else:
                    domain, codomain = tensor_space(c.hom(a, b), values[a]), values[b]
                rows = (d.actions or {}).get(_key(a, b))
                if rows is None and not (domain.dim and codomain.dim):
                    actions[(a, b)] = LinMap.zero(domain, codomain)
                else:
                    actions[(a, b)] = self._map(rows, domain, codomain, f"{location}.actions.{_key(a, b)}")
        return CatModule(c, variance, values, actions, name)

    # Certificates

    def _build_certificate(self, name: str, c: Certificate) -> Any:
        location = f"certificates.{name}"
        ambient = c.coordinates == "ambient"
        if c.type == "retraction":
            phi = self.algebra_map(c.phi, f"{location}.phi")
            psi = self.algebra_map(c.psi, f"{location}.psi")
            alpha = self._map(c.matrix, phi.target.space, phi.source.space, f"{location}.matrix")
            return RetractionAlpha(phi, psi, alpha)
        if c.type == "sep-idempotent":
            phi = self.algebra_map(c.phi, f"{location}.phi")
            xi = self.algebra_map(c.xi, f"{location}.xi")
            ctx = algmod_service.sep_context(phi)
            if ambient:
                vector = self._vector(c.vector, ctx.quotient.ambient.dim, f"{location}.vector")
                return SepIdempotent(phi, xi, ctx.from_ambient(vector))
            return SepIdempotent(phi, xi, self._vector(c.vector, ctx.dim, f"{location}.vector"))
        if c.type == "grouplike":
            coring = self.resolve(c.coring, "coring", f"{location}.coring")
            return GrouplikeElement(coring, self._vector(c.vector, coring.dim, f"{location}.vector"))
        if c.type in ("theta", "zeta"):
            e = self.resolve(c.entwining, "entwining", f"{location}.entwining")
            a, co = e.algebra.space, e.coalgebra.space
            if c.type == "theta":
                return ThetaMap(e, self._map(c.matrix, tensor_space(co, co), a, f"{location}.matrix"))
            return ZetaMap(e, self._map(c.matrix, co, tensor_space(a, a), f"{location}.matrix"))
        if c.type == "ext-alpha":
            psi = self.resolve(c.psi, "functor", f"{location}.psi")
            phi = self.resolve(c.phi, "functor", f"{location}.phi")
            components = {}
            for a in psi.source.objects:
                for b in phi.source.objects:
                    domain = phi.target.hom(phi(psi(a)), phi(b))
                    codomain = phi.source.hom(psi(a), b)
                    rows = (c.components or {}).get(_key(a, b))
                    if rows is None and not (domain.dim and codomain.dim):
                        components[(a, b)] = LinMap.zero(domain, codomain)
                    else:
                        components[(a, b)] = self._map(rows, domain, codomain, f"{location}.components.{_key(a, b)}")
            return ExtAlpha(psi, phi, components)
        phi = self.resolve(c.phi, "functor", f"{location}.phi")
        xi = self.resolve(c.xi, "functor", f"{location}.xi")
        ctx = precat_service.restriction_context(phi, xi)
        elements = {}
        for a in xi.source.objects:
            coend = ctx.coends[a]
            values = (c.elements or {}).get(a)
            if ambient:
                elements[a] = ctx.from_ambient(a, self._vector(values, coend.ambient.dim, f"{location}.elements.{a}"))
            else:
                elements[a] = self._vector(values, coend.dim, f"{location}.elements.{a}")
        return ResGamma(phi, xi, elements)


# Tasks

TaskInputs = Tuple[Optional[str], Dict[str, str]]

TASK_INPUTS: Dict[str, TaskInputs] = {
    "check-algebra": ("algebra", {}),
    "check-hom": ("hom", {}),
    "check-coalgebra": ("coalgebra", {}),
    "check-module": ("module", {}),
    "check-comodule": ("comodule", {}),
    "check-coring": ("coring", {}),
    "check-entwining": ("entwining", {}),
    "check-category": ("category", {}),
    "check-functor": ("functor", {}),
    "check-cat-module": ("cat-module", {}),
    "find-homs": (None, {"source": "algebra", "target": "algebra"}),
    "find-retractions": ("hom", {}),
    "verify-retraction": ("retraction", {}),
    "verify-retraction-ideal": ("retraction", {}),
    "solve-retraction": (None, {"phi": "hom", "psi": "hom"}),
    "verify-idempotent": ("sep-idempotent", {}),
    "solve-idempotent": (None, {"phi": "hom", "xi": "hom"}),
    "induce-delta": ("sep-idempotent", {}),
    "sweedler": ("hom", {}),
    "find-grouplike": ("coring", {}),
    "verify-grouplike": ("grouplike", {}),
    "cross-check-sweedler": ("hom", {}),
    "verify-theta": ("theta", {}),
    "solve-theta": ("entwining", {}),
    "verify-zeta": ("zeta", {}),
    "solve-zeta": ("entwining", {}),
    "check-omega": ("theta", {}),
    "check-lambda": ("zeta", {}),
    "naturality-theta": ("theta", {}),
    "naturality-zeta": ("zeta", {}),
    "check-ext": ("ext-alpha", {}),
    "solve-ext": (None, {"psi": "functor", "phi": "functor"}),
    "check-res": ("res-gamma", {}),
    "solve-res": (None, {"phi": "functor", "xi": "functor"}),
}

Handler = Callable[[Workspace, Any, Dict[str, Any], Optional[int]], Report]


def _solutions(kind: str, ws: Workspace, vectors: Sequence[Vector], notes: Sequence[str] = ()) -> Report:
    return solver_report(kind, ws.field, vectors, notes=[f"{len(vectors)} solution(s)"] + list(notes))


def _solve_idempotent(ws: Workspace, _, args: Dict[str, Any], limit: Optional[int]) -> Report:
    phi, xi = args["phi"], args["xi"]
    found = algmod_service.solve_sep_idempotent(phi, xi, limit)
    classical = algmod_service.classical_sep_space(phi, xi)
    note = "classical Eq1+Eq2: none" if classical is None else f"classical Eq1+Eq2: affine dim {classical.dim}"
    dim = algmod_service.sep_context(phi).dim
    return _solutions("solve-idempotent", ws, [e.element for e in found], [note, f"dim S⊗_R S = {dim}"])


def _induce_delta(ws: Workspace, e: SepIdempotent, args: Dict[str, Any], _limit: Optional[int]) -> Report:
    modules = args.get("modules") or [RightModule.regular(e.base_map.target)]
    return algmod_service.induce_delta_and_check(e, modules)


def _cross_check_sweedler(ws: Workspace, phi: AlgebraHom, _, limit: Optional[int]) -> Report:
    """Invariant grouplikes of the Sweedler coring against heavy idempotents with ξ = 1_S."""
    grouplikes = coring_service.find_invariant_grouplikes(coring_service.sweedler_coring(phi), limit)
    idempotents = algmod_service.solve_sep_idempotent(phi, identity_hom(phi.target), limit)
    left = sorted(g.vector for g in grouplikes)
    right = sorted(e.element for e in idempotents)
    notes = [f"{len(left)} grouplike(s)", f"{len(right)} idempotent(s)"]
    if left == right:
        agree = ConditionResult(tag="sweedler-agree", passed=True)
        return Report.from_conditions("cross-check-sweedler", [agree], notes=notes)
    only = [format_vector(ws.field, v) for v in left if v not in right] or [
        format_vector(ws.field, v) for v in right if v not in left
    ]
    return Report.from_conditions(
        "cross-check-sweedler", [failure("sweedler-agree", f"solution sets differ, e.g. at {only[0]}")], notes=notes
    )


def _check_omega(ws: Workspace, t: ThetaMap, _, _limit: Optional[int]) -> Report:
    """Both Lemma images T₁, T₂ satisfy Ω, and agree exactly when E4.6 holds."""
    t1, t2 = entwine_service.omega_pair(t)
    conditions = []
    for index, candidate in enumerate((t1, t2), start=1):
        report = entwine_service.check_omega(candidate)
        conditions.extend(prefixed(c, (), tag=f"{c.tag}-T{index}") for c in report.conditions)
    conditions.append(compare_maps("omega-agree", t1.map, t2.map))
    return Report.from_conditions("check-omega", conditions)


def _check_lambda(ws: Workspace, z: ZetaMap, _, _limit: Optional[int]) -> Report:
    s1, s2 = entwine_service.lambda_pair(z)
    conditions = []
    for index, candidate in enumerate((s1, s2), start=1):
        report = entwine_service.check_lambda(candidate)
        conditions.extend(prefixed(c, (), tag=f"{c.tag}-S{index}") for c in report.conditions)
    conditions.append(compare_maps("lambda-agree", s1.map, s2.map))
    return Report.from_conditions("check-lambda", conditions)


HANDLERS: Dict[str, Handler] = {
    "check-algebra": lambda ws, a, args, limit: algmod_service.check_algebra(a),
    "check-hom": lambda ws, h, args, limit: algmod_service.check_hom(h),
    "check-coalgebra": lambda ws, c, args, limit: coring_service.check_coalgebra(c),
    "check-module": lambda ws, m, args, limit: algmod_service.check_module(m),
    "check-comodule": lambda ws, n, args, limit: coring_service.check_comodule(n),
    "check-coring": lambda ws, c, args, limit: coring_service.check_coring(c),
    "check-entwining": lambda ws, e, args, limit: entwine_service.check_entwining(e),
    "check-category": lambda ws, c, args, limit: precat_service.check_category(c),
    "check-functor": lambda ws, f, args, limit: precat_service.check_functor(f),
    "check-cat-module": lambda ws, m, args, limit: precat_service.check_cat_module(m),
    "find-homs": lambda ws, _, args, limit: _solutions(
        "find-homs",
        ws,
        [h.map.entries for h in algmod_service.find_algebra_homs(args["source"], args["target"], limit)],
    ),
    "find-retractions": lambda ws, phi, args, limit: _solutions(
        "find-retractions", ws, [r.map.entries for r in algmod_service.find_ring_retractions(phi, limit)]
    ),
    "verify-retraction": lambda ws, r, args, limit: algmod_service.verify_retraction(r),
    "verify-retraction-ideal": lambda ws, r, args, limit: algmod_service.verify_retraction_ideal(r),
    "solve-retraction": lambda ws, _, args, limit: _solutions(
        "solve-retraction",
        ws,
        [r.map.entries for r in algmod_service.solve_retraction(args["phi"], args["psi"], limit)],
    ),
    "verify-idempotent": lambda ws, e, args, limit: algmod_service.verify_sep_idempotent(e),
    "solve-idempotent": _solve_idempotent,
    "induce-delta": _induce_delta,
    "sweedler": lambda ws, phi, args, limit: _solutions(
        "sweedler",
        ws,
        [g.vector for g in coring_service.find_invariant_grouplikes(coring_service.sweedler_coring(phi), limit)],
    ),
    "find-grouplike": lambda ws, c, args, limit: _solutions(
        "find-grouplike", ws, [g.vector for g in coring_service.find_invariant_grouplikes(c, limit)]
    ),
    "verify-grouplike": lambda ws, g, args, limit: coring_service.verify_grouplike(g),
    "cross-check-sweedler": _cross_check_sweedler,
    "verify-theta": lambda ws, t, args, limit: entwine_service.verify_theta(t),
    "solve-theta": lambda ws, e, args, limit: _solutions(
        "solve-theta", ws, [t.map.entries for t in entwine_service.solve_theta(e, limit)]
    ),
    "verify-zeta": lambda ws, z, args, limit: entwine_service.verify_zeta(z),
    "solve-zeta": lambda ws, e, args, limit: _solutions(
        "solve-zeta", ws, [z.map.entries for z in entwine_service.solve_zeta(e, limit)]
    ),
    "check-omega": _check_omega,
    "check-lambda": _check_lambda,
    "naturality-theta": lambda ws, t, args, limit: entwine_service.check_theta_naturality(t),
    "naturality-zeta": lambda ws, z, args, limit: entwine_service.check_zeta_naturality(z),
    "check-ext": lambda ws, alpha, args, limit: precat_service.check_ext_certificate(alpha),
    "solve-ext": lambda ws, _, args, limit: _solutions(
        "solve-ext",
        ws,
        precat_service.ext_as_vectors(precat_service.solve_ext_certificate(args["psi"], args["phi"], limit)),
    ),
    "check-res": lambda ws, gamma, args, limit: precat_service.check_res_certificate(gamma),
    "solve-res": lambda ws, _, args, limit: _solutions(
        "solve-res",
        ws,
        precat_service.solutions_as_vectors(precat_service.solve_res_certificate(args["phi"], args["xi"], limit)),
    ),
}


def _input(ws: Workspace, task: TaskSpec, name: Optional[str], expected: str, location: str) -> Any:
    # every kind but check-hom needs its homs to be algebra maps
    if expected == "hom" and task.kind != "check-hom":
        return ws.algebra_map(name, location)
    return ws.resolve(name, expected, location)


def _task_inputs(ws: Workspace, task: TaskSpec) -> Tuple[Any, Dict[str, Any]]:
    location = f"tasks.{task.name}"
    target_type, arg_types = TASK_INPUTS[task.kind]
    target = _input(ws, task, task.target, target_type, f"{location}.target") if target_type else None
    given = dict(task.args or {})
    args: Dict[str, Any] = {}
    for key, expected in arg_types.items():
        args[key] = _input(ws, task, given.pop(key, None), expected, f"{location}.args.{key}")
    if task.kind == "induce-delta" and "modules" in given:
        names = given.pop("modules")
        if not isinstance(names, list):
            raise SpecError(f"{location}.args.modules", "expected a list of module names")
        modules = [ws.resolve(n, "module", f"{location}.args.modules.{i}") for i, n in enumerate(names)]
        if not all(isinstance(m, RightModule) for m in modules):
            raise SpecError(f"{location}.args.modules", "test modules must be right modules")
        args["modules"] = modules
    if given:
        raise SpecError(f"{location}.args", f"unexpected arguments {sorted(given)}")
    return target, args


def load_spec(text: str, source: str = "<document>") -> SpecDocument:
    """
    Parse and validate a document from its text.

    Raises:
        SpecError: Malformed JSON, schema violations, unresolved names, shape mismatches, bad modulus
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{source}:{e.lineno}:{e.colno}", e.msg) from e
    try:
        doc = SpecDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise SpecError(location, first["msg"]) from e
    ws = Workspace(doc)
    ws.build_all()
    for task in doc.tasks:
        _task_inputs(ws, task)
    logger.info(
        f"Parsed {source}: field {ws.field}, {len(doc.definitions)} definition(s), "
        f"{len(doc.certificates)} certificate(s), {len(doc.tasks)} task(s)"
    )
    return doc


def parse_spec(path: Union[str, Path]) -> SpecDocument:
    """
    Read and validate a document file.

    Raises:
        SpecError: Unreadable file or invalid document
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(str(path), f"cannot read file: {e.strerror}") from e
    return load_spec(text, source=str(path))


def dump(doc: SpecDocument) -> str:
    """Serialize a document; load_spec(dump(doc)) == doc."""
    return json.dumps(doc.model_dump(exclude_none=True), indent=2, ensure_ascii=False)


def run_task(ws: Workspace, task: TaskSpec, limit: Optional[int] = None) -> Report:
    """
    Run one task and apply its expectation.

    Raises:
        LimitExceeded: A solver exceeded its candidate limit
        InfiniteField: A solver was asked to enumerate over Q
    """
    logger.info(f"Task {task.name!r} ({task.kind}) started")
    start = time.perf_counter()
    target, args = _task_inputs(ws, task)
    try:
        report = HANDLERS[task.kind](ws, target, args, task.limit if task.limit is not None else limit)
    except LimitExceeded:
        logger.error(f"Task {task.name!r} exceeded the enumeration limit")
        raise
    elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    report = apply_expectation(report, task.expect)
    report = report.model_copy(update={"task": task.name, "kind": task.kind, "elapsed_ms": elapsed_ms})
    logger.info(f"Task {task.name!r} finished: {report.verdict} ({report.outcome}) in {elapsed_ms} ms")
    return report


def run_tasks(doc: SpecDocument, kinds: Optional[Sequence[str]] = None, limit: Optional[int] = None) -> List[Report]:
    """One Report per task (restricted to `kinds` when given), in document order."""
    ws = Workspace(doc)
    return [run_task(ws, task, limit) for task in doc.tasks if kinds is None or task.kind in kinds]


def exit_code(reports: Sequence[Report]) -> int:
    """0 when every report passes, 1 otherwise."""
    return 0 if all(r.passed for r in reports) else 1
