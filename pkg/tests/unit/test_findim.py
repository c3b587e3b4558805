"""
Unit tests for based spaces, linear maps, tensor products and quotients.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.utils.exactla import DimensionMismatchError, Field, FieldMismatchError, NoSolution
from src.utils.findim import (
    BasedSpace,
    LinearConditionSystem,
    LinMap,
    chain,
    cokernel,
    compose,
    direct_sum_space,
    first_difference,
    inclusion,
    projection,
    quotient_by,
    tensor_map,
    tensor_space,
    tensor_swap,
    tensor_vector,
    unit_space,
)
from tests.strategies import linear_maps

GF3 = Field.gf(3)
V2 = BasedSpace(2, GF3)
V3 = BasedSpace(3, GF3)


class TestBasedSpace:
    """Test based spaces and tensor indexing."""

    def test_equality_ignores_labels(self, q):
        """Test spaces compare by dimension and field only."""
        assert BasedSpace(2, q, ("a", "b")) == BasedSpace(2, q)
        assert BasedSpace(2, q) != BasedSpace(2, Field.gf(2))

    def test_labels_must_match_dimension(self, q):
        """Test a wrong number of labels is rejected."""
        with pytest.raises(ValueError):
            BasedSpace(2, q, ("a",))

    def test_labels_must_be_distinct(self, q):
        """Test repeated labels are rejected."""
        with pytest.raises(ValueError):
            BasedSpace(2, q, ("a", "a"))

    def test_tensor_labels_and_decode(self, q):
        """Test e_i ⊗ f_j sits at index i * dim(N) + j."""
        m = BasedSpace(2, q, ("x", "y"))
        n = BasedSpace(3, q, ("a", "b", "c"))
        t = tensor_space(m, n)
        assert t.dim == 6
        assert t.label(5) == "y⊗c"
        assert t.decode(5) == (1, 2)
        assert tensor_space(t, m).decode(11) == (1, 2, 1)

    def test_tensor_over_different_fields(self, q, gf2):
        """Test tensoring spaces over different fields raises."""
        with pytest.raises(FieldMismatchError):
            tensor_space(BasedSpace(1, q), BasedSpace(1, gf2))

    def test_unit_space_is_neutral(self, q):
        """Test k ⊗ M has M's dimension."""
        assert tensor_space(unit_space(q), BasedSpace(4, q)).dim == 4

    def test_direct_sum_offsets(self, q):
        """Test block offsets of a direct sum."""
        space, offsets = direct_sum_space([BasedSpace(2, q), BasedSpace(0, q), BasedSpace(3, q)])
        assert space.dim == 5
        assert offsets == [0, 2, 2]

    def test_empty_direct_sum_needs_field(self):
        """Test the empty direct sum needs an explicit field."""
        with pytest.raises(ValueError):
            direct_sum_space([])
        assert direct_sum_space([], Field.gf(2))[0].dim == 0


class TestLinMap:
    """Test linear maps."""

    def test_shape_is_checked(self):
        """Test a matrix of the wrong shape is rejected."""
        with pytest.raises(DimensionMismatchError):
            LinMap.from_rows(V2, V3, [[1, 0], [0, 1]])

    def test_compose_mismatch(self):
        """Test composing maps that do not meet raises."""
        f = LinMap.identity(V2)
        g = LinMap.identity(V3)
        with pytest.raises(DimensionMismatchError):
            compose(f, g)

    def test_chain_order(self):
        """Test chain(f, g) applies f first."""
        f = LinMap.from_rows(V2, V3, [[1, 0], [0, 1], [1, 1]])
        g = LinMap.from_rows(V3, V2, [[1, 0, 1], [0, 1, 1]])
        assert chain(f, g) == compose(g, f)
        assert chain(f, g).domain == V2

    def test_from_entries(self):
        """Test entries are read row-major."""
        f = LinMap.from_entries(V2, V2, (1, 2, 0, 1))
        assert f((0, 1)) == (2, 1)

    def test_from_vector(self):
        """Test the map k -> V sending 1 to v."""
        f = LinMap.from_vector(V3, (1, 2, 0))
        assert f.domain == unit_space(GF3)
        assert f((1,)) == (1, 2, 0)

    def test_tensor_vector(self):
        """Test x ⊗ y coordinates."""
        assert tensor_vector(GF3, (1, 2), (0, 1, 1)) == (0, 1, 1, 0, 2, 2)

    def test_swap_is_an_involution(self):
        """Test swap_{N,M} ∘ swap_{M,N} = id."""
        assert compose(tensor_swap(V3, V2), tensor_swap(V2, V3)) == LinMap.identity(tensor_space(V2, V3))

    def test_swap_moves_factors(self):
        """Test swap(e_1 ⊗ f_2) = f_2 ⊗ e_1."""
        x = tensor_vector(GF3, V2.basis_vector(1), V3.basis_vector(2))
        assert tensor_swap(V2, V3)(x) == tensor_vector(GF3, V3.basis_vector(2), V2.basis_vector(1))

    def test_inclusion_projection(self):
        """Test projection_i ∘ inclusion_j is δ_ij."""
        summands = [V2, V3]
        assert compose(projection(summands, 1), inclusion(summands, 1)) == LinMap.identity(V3)
        assert compose(projection(summands, 0), inclusion(summands, 1)).is_zero()

    def test_first_difference_decodes_location(self):
        """Test witnesses are located per tensor factor."""
        t = tensor_space(V2, V3)
        lhs = LinMap.identity(t)
        rhs = LinMap.from_basis_images(t, t, lambda j: {j: 1} if j != 4 else {})
        diffs = first_difference(lhs, rhs)
        assert [d.location for d in diffs] == [(1, 1)]
        assert diffs[0].lhs == t.basis_vector(4)
        assert diffs[0].rhs == t.zero_vector()

    @given(st.data())
    def test_tensor_map_is_functorial(self, data):
        """Test (f ⊗ g)(h ⊗ k) = fh ⊗ gk."""
        f = data.draw(linear_maps(V2, V3))
        h = data.draw(linear_maps(V3, V2))
        g = data.draw(linear_maps(V3, V2))
        k = data.draw(linear_maps(V2, V3))
        assert tensor_map(f, g) @ tensor_map(h, k) == tensor_map(f @ h, g @ k)

    @given(st.data())
    def test_tensor_map_on_vectors(self, data):
        """Test (f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y)."""
        f = data.draw(linear_maps(V2, V3))
        g = data.draw(linear_maps(V3, V2))
        x = tuple(data.draw(st.lists(st.integers(0, 2), min_size=2, max_size=2)))
        y = tuple(data.draw(st.lists(st.integers(0, 2), min_size=3, max_size=3)))
        assert tensor_map(f, g)(tensor_vector(GF3, x, y)) == tensor_vector(GF3, f(x), g(y))

    @given(st.data())
    def test_swap_is_natural(self, data):
        """Test swap ∘ (f ⊗ g) = (g ⊗ f) ∘ swap."""
        f = data.draw(linear_maps(V2, V3))
        g = data.draw(linear_maps(V3, V2))
        assert tensor_swap(V3, V2) @ tensor_map(f, g) == tensor_map(g, f) @ tensor_swap(V2, V3)


class TestQuotient:
    """Test quotients by relation spans."""

    def test_quotient_example(self, q):
        """Test Q^2 / (1, -1) identifies both basis vectors."""
        qs = quotient_by(BasedSpace(2, q), [(1, -1)])
        assert qs.dim == 1
        assert qs.project((1, 0)) == qs.project((0, 1)) == (1,)

    def test_sparse_relations(self):
        """Test relations may be given as sparse dicts."""
        qs = quotient_by(V3, [{0: 1, 2: 1}])
        assert qs.dim == 2
        assert qs.project((1, 0, 0)) == qs.project((0, 0, 2))

    def test_relation_length_checked(self):
        """Test a dense relation of the wrong length is rejected."""
        with pytest.raises(DimensionMismatchError):
            quotient_by(V3, [(1, 0)])

    def test_projection_kills_relations(self):
        """Test every relation projects to zero and projection ∘ section = id."""
        relations = [(1, 1, 0), (0, 1, 2)]
        qs = quotient_by(V3, relations)
        for r in relations:
            assert not any(qs.project(r))
        assert compose(qs.projection, qs.section) == LinMap.identity(qs.space)

    def test_equal_spans_give_equal_quotients(self):
        """Test the quotient depends on the span, not on the spanning set."""
        a = quotient_by(V3, [(1, 1, 0), (0, 1, 2)])
        b = quotient_by(V3, [(1, 2, 2), (1, 1, 0), (0, 2, 1)])
        assert a.projection == b.projection

    def test_cokernel(self):
        """Test the cokernel of the diagonal k -> k^2."""
        diag = LinMap.from_rows(BasedSpace(1, GF3), V2, [[1], [1]])
        c = cokernel(diag)
        assert c.dim == 1
        assert not any(c.project((1, 1)))


class TestLinearConditionSystem:
    """Test affine condition systems."""

    def test_single_condition(self, gf2):
        """Test x0 + x1 = 1 over GF(2)."""
        system = LinearConditionSystem(gf2, 2)
        system.add("sum", lambda x: (gf2.sub(gf2.add(x[0], x[1]), 1),))
        space = system.solve()
        assert system.tags == ["sum"]
        assert space.particular == (1, 0)
        assert space.dim == 1

    def test_map_valued_residual(self):
        """Test a residual returning a LinMap: f ∘ x = id for the unknown x: V2 -> V2."""
        f = LinMap.from_rows(V2, V2, [[1, 1], [0, 1]])

        def residual(x):
            return compose(f, LinMap.from_entries(V2, V2, x)) - LinMap.identity(V2)

        system = LinearConditionSystem(GF3, 4)
        system.add("inverse", residual)
        space = system.solve()
        assert space.dim == 0
        assert LinMap.from_entries(V2, V2, space.particular) == LinMap.from_rows(V2, V2, [[1, 2], [0, 1]])

    def test_inconsistent(self, gf2):
        """Test contradictory conditions raise NoSolution."""
        system = LinearConditionSystem(gf2, 1)
        system.add("zero", lambda x: (x[0],))
        system.add("one", lambda x: (gf2.sub(x[0], 1),))
        with pytest.raises(NoSolution):
            system.solve()
