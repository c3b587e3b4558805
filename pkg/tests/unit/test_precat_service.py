"""
Unit tests for linear categories, their modules, coends and the category-level certificates.

One-object categories recover the algebra statements: α certificates are retractions and
Γ certificates are separability idempotents.
"""

import random
from fractions import Fraction
from typing import List

import pytest

from src.models.algebra import AlgebraHom, RetractionAlpha, identity_hom, unit_hom
from src.models.category import CatModule, ExtAlpha, LinearFunctor, ResGamma
from src.services.algmod_service import sep_context, solve_retraction, solve_sep_idempotent, verify_retraction
from src.services.precat_service import (
    ONE_OBJECT,
    cat_tensor,
    check_cat_module,
    check_category,
    check_ext_certificate,
    check_functor,
    check_res_certificate,
    compose_functors,
    ext_as_vectors,
    hom_functor,
    identity_functor,
    identity_gamma,
    one_object_category,
    path_category,
    pullback_left,
    pullback_right,
    representable_module,
    restriction_context,
    solve_ext_certificate,
    solve_res_certificate,
)
from src.utils.catalog import (
    complex_to_matrices,
    diagonal_algebra,
    dual_numbers,
    matrix_algebra,
    quadratic_algebra,
    quadratic_extension,
    upper_triangular,
)
from src.utils.exactla import DimensionMismatchError, Field
from src.utils.findim import BasedSpace, LinMap, tensor_space

D_MINUS_IB = [[0, 0, 0, 1], [0, -1, 0, 0]]

# Algebras over GF(2) shared by the one-object and algebra-level tests, each over R = k and R = S
SHARED_ALGEBRAS = [
    lambda f: diagonal_algebra(f, 2),
    dual_numbers,
    lambda f: quadratic_algebra(f, 1, 1),
    lambda f: upper_triangular(f, 2),
    lambda f: matrix_algebra(f, 2),
]
SHARED_IDS = ["k²", "k[ε]", "GF(4)", "T2", "M2"]


def one_object_functors(phi: AlgebraHom, psi: AlgebraHom):
    """ψ: Q -> R and φ: R -> S between one-object categories sharing R."""
    r_cat = one_object_category(phi.source)
    return (
        hom_functor(psi, one_object_category(psi.source), r_cat),
        hom_functor(phi, r_cat, one_object_category(phi.target)),
    )


def restriction_functors(phi: AlgebraHom, xi: AlgebraHom):
    """φ: R -> S and ξ: T -> S between one-object categories sharing S."""
    s_cat = one_object_category(phi.target)
    return (
        hom_functor(phi, one_object_category(phi.source), s_cat),
        hom_functor(xi, one_object_category(xi.source), s_cat),
    )


def random_path_module(field_: Field, n: int, rng: random.Random) -> CatModule:
    """A representation V_1 -> V_2 -> ... -> V_n of the path category as a left module."""
    c = path_category(field_, n)
    p = field_.p
    values = {a: BasedSpace(rng.randrange(3), field_) for a in c.objects}
    steps: List[LinMap] = []
    for a, b in zip(c.objects, c.objects[1:]):
        size = values[a].dim * values[b].dim
        steps.append(LinMap.from_entries(values[a], values[b], [rng.randrange(p) for _ in range(size)]))
    actions = {}
    for i, a in enumerate(c.objects):
        for j, b in enumerate(c.objects):
            domain = tensor_space(c.hom(a, b), values[a])
            if i > j:
                actions[(a, b)] = LinMap.zero(domain, values[b])
                continue
            composite = LinMap.identity(values[a])
            for step in steps[i:j]:
                composite = step @ composite
            actions[(a, b)] = LinMap.from_entries(domain, values[b], composite.entries)
    return CatModule(c, "left", values, actions, name="V")


class TestCategories:
    """Test categories, functors and modules."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_path_category(self, gf2, n):
        """Test the path category satisfies the category axioms."""
        report = check_category(path_category(gf2, n))
        assert report.passed
        assert [c.tag for c in report.conditions] == ["assoc", "identity-left", "identity-right"]

    def test_path_category_homs(self, gf3):
        """Test hom(i, j) is one-dimensional exactly when i <= j."""
        c = path_category(gf3, 3)
        dims = [[c.hom(a, b).dim for b in c.objects] for a in c.objects]
        assert dims == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]

    def test_one_object_category(self, q):
        """Test an algebra is a one-object category."""
        c = one_object_category(matrix_algebra(q, 2))
        assert c.objects == (ONE_OBJECT,)
        assert check_category(c).passed

    def test_identity_and_composite_functors(self, gf2):
        """Test the identity functor and its composite with itself are functors."""
        ident = identity_functor(path_category(gf2, 3))
        assert check_functor(ident).passed
        assert check_functor(compose_functors(ident, ident)).passed

    def test_functor_from_hom(self, q):
        """Test k(i) -> M2 induces a functor between one-object categories."""
        phi_hom = complex_to_matrices(q)
        _, phi = one_object_functors(phi_hom, unit_hom(phi_hom.source))
        assert check_functor(phi).passed

    def test_non_multiplicative_functor(self, q):
        """Test a unital but non-multiplicative map fails only functor-compose."""
        source, target = quadratic_extension(q, -1, "i"), matrix_algebra(q, 2)
        bad = AlgebraHom(source, target, LinMap.from_rows(source.space, target.space, [[1, 0], [0, 1], [0, 0], [1, 0]]))
        functor = hom_functor(bad, one_object_category(source), one_object_category(target))
        assert check_functor(functor).failed_tags() == ["functor-compose"]

    def test_functor_shape_checked(self, gf2):
        """Test a functor must map every hom set with the right shape."""
        c = path_category(gf2, 2)
        with pytest.raises(DimensionMismatchError):
            LinearFunctor(c, c, {"1": "1", "2": "2"}, {})

    @pytest.mark.parametrize("variance", ["right", "left"])
    def test_representable_modules(self, gf3, variance):
        """Test hom(−, a) and hom(a, −) are modules."""
        c = path_category(gf3, 3)
        for a in c.objects:
            assert check_cat_module(representable_module(c, a, variance)).passed

    def test_pullback_modules(self, q):
        """Test S(φ−, *) and S(*, φ−) are modules over R for φ: k(i) -> M2."""
        phi_hom = complex_to_matrices(q)
        _, phi = one_object_functors(phi_hom, unit_hom(phi_hom.source))
        assert check_cat_module(pullback_right(phi, ONE_OBJECT)).passed
        assert check_cat_module(pullback_left(phi, ONE_OBJECT)).passed

    def test_zero_action_fails_identity(self, gf2):
        """Test a representable module with zero actions breaks only module-identity."""
        c = path_category(gf2, 2)
        m = representable_module(c, "2")
        zero = {key: LinMap.zero(action.domain, action.codomain) for key, action in m.actions.items()}
        broken = CatModule(c, "right", m.values, zero, name="broken")
        assert check_cat_module(broken).failed_tags() == ["module-identity"]


class TestCoends:
    """Test the coend tensor product."""

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("seed", range(20))
    def test_co_yoneda(self, p, seed):
        """Test hom(−, a) ⊗_R N has the dimension of N(a) on a random path category and representation."""
        rng = random.Random(seed)
        n = random_path_module(Field.gf(p), rng.randint(1, 4), rng)
        assert check_cat_module(n).passed
        for a in n.category.objects:
            h = representable_module(n.category, a, "right")
            assert cat_tensor(h, n).dim == n.value(a).dim

    def test_one_object_coend(self, gf2):
        """Test the coend over a one-object category is S ⊗_R S."""
        phi = unit_hom(matrix_algebra(gf2, 2))
        phi_f, xi_f = restriction_functors(phi, identity_hom(phi.target))
        assert restriction_context(phi_f, xi_f).layout == [(ONE_OBJECT, sep_context(phi).dim)]

    def test_variance_checked(self, gf2):
        """Test two left modules cannot be tensored."""
        c = path_category(gf2, 2)
        with pytest.raises(DimensionMismatchError):
            cat_tensor(representable_module(c, "1", "left"), representable_module(c, "2", "left"))

    def test_category_checked(self, gf2):
        """Test modules over different categories cannot be tensored."""
        right = representable_module(path_category(gf2, 2), "1", "right")
        left = representable_module(path_category(gf2, 3), "1", "left")
        with pytest.raises(DimensionMismatchError):
            cat_tensor(right, left)


class TestExtCertificates:
    """Test α certificates for extension of scalars."""

    def test_identity_certificate(self, gf2):
        """Test α = 1 certifies the identity functor of a path category."""
        c = path_category(gf2, 3)
        ident = identity_functor(c)
        components = {(a, b): LinMap.identity(c.hom(a, b)) for a in c.objects for b in c.objects}
        report = check_ext_certificate(ExtAlpha(ident, ident, components))
        assert report.passed
        assert [t.tag for t in report.conditions] == ["ext1", "ext2", "ext-left", "ext-right"]

    def test_identity_solver(self, gf2):
        """Test ext1 leaves only α = 1 for the identity functor."""
        ident = identity_functor(path_category(gf2, 2))
        assert ext_as_vectors(solve_ext_certificate(ident, ident)) == [(1, 1, 1)]

    @pytest.mark.parametrize(
        "rows",
        [D_MINUS_IB, [[Fraction(1, 2), 0, 0, Fraction(1, 2)], [0, Fraction(-1, 2), Fraction(1, 2), 0]]],
        ids=["d-ib", "trace"],
    )
    def test_one_object_matches_retraction(self, q, rows):
        """Test α passes exactly when the same map is a retraction certificate."""
        phi = complex_to_matrices(q)
        psi = unit_hom(phi.source)
        alpha = LinMap.from_rows(phi.target.space, phi.source.space, rows)
        psi_f, phi_f = one_object_functors(phi, psi)
        report = check_ext_certificate(ExtAlpha(psi_f, phi_f, {(ONE_OBJECT, ONE_OBJECT): alpha}))
        assert report.passed == verify_retraction(RetractionAlpha(phi, psi, alpha)).passed

    def test_trace_fails_only_ext2(self, q):
        """Test the trace map is bilinear but fails ext2."""
        half = Fraction(1, 2)
        phi = complex_to_matrices(q)
        alpha = LinMap.from_rows(phi.target.space, phi.source.space, [[half, 0, 0, half], [0, -half, half, 0]])
        psi_f, phi_f = one_object_functors(phi, unit_hom(phi.source))
        report = check_ext_certificate(ExtAlpha(psi_f, phi_f, {(ONE_OBJECT, ONE_OBJECT): alpha}))
        assert report.failed_tags() == ["ext2"]

    def test_one_object_solver_matches_retractions(self, gf3):
        """Test the α search finds as many certificates as the retraction search."""
        phi = complex_to_matrices(gf3)
        psi = unit_hom(phi.source)
        psi_f, phi_f = one_object_functors(phi, psi)
        found = solve_ext_certificate(psi_f, phi_f)
        assert len(found) == len(solve_retraction(phi, psi)) == 4
        for alpha in found:
            assert check_ext_certificate(alpha).passed

    @pytest.mark.parametrize("build", SHARED_ALGEBRAS, ids=SHARED_IDS)
    @pytest.mark.parametrize("base", [unit_hom, identity_hom], ids=["unit", "identity"])
    def test_one_object_matches_retractions(self, gf2, build, base):
        """Test α certificates and retractions agree in number, and each α passes as a retraction."""
        s = build(gf2)
        phi = base(s)
        psi = unit_hom(phi.source)
        psi_f, phi_f = one_object_functors(phi, psi)
        found = solve_ext_certificate(psi_f, phi_f)
        assert len(found) == len(solve_retraction(phi, psi))
        for alpha in found:
            assert verify_retraction(RetractionAlpha(phi, psi, alpha.components[(ONE_OBJECT, ONE_OBJECT)])).passed


class TestResCertificates:
    """Test Γ certificates for restriction of scalars."""

    def test_identity_certificate_on_paths(self, gf3):
        """Test Γ_a = 1_a ⊗ 1_a certifies the identity functor."""
        ident = identity_functor(path_category(gf3, 3))
        report = check_res_certificate(identity_gamma(ident))
        assert report.passed
        assert [t.tag for t in report.conditions] == ["cond1", "cond2", "cond3"]
        assert report.notes == ["coend dims {'1': 1, '2': 1, '3': 1}"]

    def test_identity_certificate_on_one_object(self, gf2):
        """Test 1 ⊗ 1 certifies the identity of M2."""
        ident = identity_functor(one_object_category(matrix_algebra(gf2, 2)))
        assert check_res_certificate(identity_gamma(ident)).passed

    def test_wrong_length_raises(self, gf2):
        """Test a Γ whose length differs from the coend dimension is rejected."""
        ident = identity_functor(path_category(gf2, 2))
        gamma = identity_gamma(ident)
        broken = ResGamma(ident, ident, {"1": (1, 0), "2": gamma.elements["2"]})
        with pytest.raises(DimensionMismatchError):
            check_res_certificate(broken)

    @pytest.mark.parametrize("build", SHARED_ALGEBRAS, ids=SHARED_IDS)
    @pytest.mark.parametrize("base", [unit_hom, identity_hom], ids=["unit", "identity"])
    def test_one_object_matches_idempotents(self, gf2, build, base):
        """Test Γ certificates and heavy separability idempotents agree in number."""
        s = build(gf2)
        phi, xi = base(s), identity_hom(s)
        phi_f, xi_f = restriction_functors(phi, xi)
        gammas = solve_res_certificate(phi_f, xi_f)
        assert len(gammas) == len(solve_sep_idempotent(phi, xi))
        for gamma in gammas:
            assert check_res_certificate(gamma).passed
