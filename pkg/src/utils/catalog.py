"""
Catalog of standard structures given by structure constants.

This module provides builders for:
- Algebras: matrix, diagonal, upper triangular, quadratic, cyclic group algebras
- Coalgebras: grouplike, comatrix and the trivial coalgebra
- Homomorphisms: units, identities, diagonal embeddings, ℚ(i) -> M₂
- The swap entwining of any algebra and coalgebra

Bases are listed in the order given in each docstring; products of basis
vectors are computed from the index rule, never stored by hand.
"""

from typing import Callable, Dict, List, Sequence, Tuple

from src.models.algebra import AlgebraHom, StructureAlgebra, field_algebra, identity_hom, unit_hom
from src.models.coalgebra import StructureCoalgebra
from src.models.entwining import EntwiningStructure
from src.utils.exactla import Field, Scalar
from src.utils.findim import BasedSpace, LinMap, tensor_space, tensor_swap, unit_space

SparseImage = Dict[int, Scalar]


def _algebra(
    field_: Field,
    labels: Sequence[str],
    product: Callable[[int, int], SparseImage],
    unit: Sequence[Scalar],
    name: str,
) -> StructureAlgebra:
    space = BasedSpace(len(labels), field_, tuple(labels))
    n = space.dim
    mult = LinMap.from_basis_images(tensor_space(space, space), space, lambda idx: product(idx // n, idx % n))
    return StructureAlgebra(space, mult, tuple(unit), name)


def _coalgebra(
    field_: Field,
    labels: Sequence[str],
    coproduct: Callable[[int], SparseImage],
    counit: Sequence[Scalar],
    name: str,
) -> StructureCoalgebra:
    space = BasedSpace(len(labels), field_, tuple(labels))
    comult = LinMap.from_basis_images(space, tensor_space(space, space), coproduct)
    eps = LinMap.from_rows(space, unit_space(field_), [list(counit)])
    return StructureCoalgebra(space, comult, eps, name)


def _matrix_units(n: int, keep: Callable[[int, int], bool]) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if keep(i, j)]


def _unit_product(units: Sequence[Tuple[int, int]], one: Scalar) -> Callable[[int, int], SparseImage]:
    position = {u: idx for idx, u in enumerate(units)}

    def product(p: int, q: int) -> SparseImage:
        (i, j), (k, m) = units[p], units[q]
        return {position[(i, m)]: one} if j == k else {}

    return product


def matrix_algebra(field_: Field, n: int) -> StructureAlgebra:
    """
    M_n(k) with basis E11, E12, ..., Enn (row-major); E_ij E_kl = δ_jk E_il.

    Examples:
        >>> matrix_algebra(Field.gf(2), 2).space.labels
        ('E11', 'E12', 'E21', 'E22')
    """
    units = _matrix_units(n, lambda i, j: True)
    labels = [f"E{i + 1}{j + 1}" for i, j in units]
    unit = [field_.one if i == j else field_.zero for i, j in units]
    return _algebra(field_, labels, _unit_product(units, field_.one), unit, f"M{n}")


def upper_triangular(field_: Field, n: int = 2) -> StructureAlgebra:
    """Upper triangular n x n matrices, basis E_ij for i <= j in row-major order."""
    units = _matrix_units(n, lambda i, j: i <= j)
    labels = [f"E{i + 1}{j + 1}" for i, j in units]
    unit = [field_.one if i == j else field_.zero for i, j in units]
    return _algebra(field_, labels, _unit_product(units, field_.one), unit, f"T{n}")


def diagonal_algebra(field_: Field, n: int) -> StructureAlgebra:
    """k^n = k × ... × k with orthogonal idempotents e1, ..., en."""
    labels = [f"e{i + 1}" for i in range(n)]
    one = field_.one
    return _algebra(field_, labels, lambda p, q: {p: one} if p == q else {}, [one] * n, f"k^{n}")


def quadratic_algebra(field_: Field, c0, c1, symbol: str = "x") -> StructureAlgebra:
    """
    k[x]/(x² − c1·x − c0) with basis 1, x.

    Examples:
        >>> gf4 = quadratic_algebra(Field.gf(2), 1, 1)
        >>> gf4.product((0, 1), (0, 1))
        (1, 1)
    """
    f = field_
    c0, c1 = f.coerce(c0), f.coerce(c1)

    def product(p: int, q: int) -> SparseImage:
        if p == 0 or q == 0:
            return {p + q: f.one}
        return {j: v for j, v in enumerate((c0, c1)) if v != 0}

    return _algebra(f, ["1", symbol], product, [f.one, f.zero], f"k[{symbol}]")


def quadratic_extension(field_: Field, d, symbol: str = "x") -> StructureAlgebra:
    """k[x]/(x² − d): a field when d is not a square, e.g. ℚ(i) for d = −1 or GF(9) for d = 2 over GF(3)."""
    return quadratic_algebra(field_, d, 0, symbol)


def dual_numbers(field_: Field) -> StructureAlgebra:
    return quadratic_algebra(field_, 0, 0, "ε")


def group_algebra(field_: Field, n: int) -> StructureAlgebra:
    """k[C_n] with basis g0, ..., g(n-1); g_i g_j = g_{i+j mod n}."""
    labels = [f"g{i}" for i in range(n)]
    one = field_.one
    unit = [one] + [field_.zero] * (n - 1)
    return _algebra(field_, labels, lambda p, q: {(p + q) % n: one}, unit, f"k[C{n}]")


def grouplike_coalgebra(field_: Field, n: int) -> StructureCoalgebra:
    """kG for a set of n grouplikes: Δ(g_i) = g_i ⊗ g_i, ε(g_i) = 1."""
    labels = [f"g{i + 1}" for i in range(n)]
    one = field_.one
    return _coalgebra(field_, labels, lambda i: {i * n + i: one}, [one] * n, f"kG{n}")


def comatrix_coalgebra(field_: Field, n: int) -> StructureCoalgebra:
    """The dual of M_n(k): Δ(c_ij) = Σ_k c_ik ⊗ c_kj, ε(c_ij) = δ_ij."""
    units = _matrix_units(n, lambda i, j: True)
    labels = [f"c{i + 1}{j + 1}" for i, j in units]
    one = field_.one
    size = len(units)

    def coproduct(p: int) -> SparseImage:
        i, j = units[p]
        return {(i * n + k) * size + (k * n + j): one for k in range(n)}

    counit = [one if i == j else field_.zero for i, j in units]
    return _coalgebra(field_, labels, coproduct, counit, f"Mc{n}")


def trivial_coalgebra(field_: Field) -> StructureCoalgebra:
    """k as a coalgebra: Δ(1) = 1 ⊗ 1, ε(1) = 1."""
    return _coalgebra(field_, ["1"], lambda i: {0: field_.one}, [field_.one], "k")


def swap_entwining(algebra: StructureAlgebra, coalgebra: StructureCoalgebra) -> EntwiningStructure:
    """ψ(c ⊗ a) = a ⊗ c; an entwining for every pair."""
    a, c = algebra, coalgebra
    return EntwiningStructure(a, c, tensor_swap(c.space, a.space), name=f"swap({a.name}, {c.name})")


def complex_to_matrices(field_: Field) -> AlgebraHom:
    """
    k(i) = k[x]/(x² + 1) -> M₂(k), a + ib ↦ [[a, −b], [b, a]].

    Examples:
        >>> phi = complex_to_matrices(Field.rational())
        >>> phi.map((0, 1))
        (Fraction(0, 1), Fraction(-1, 1), Fraction(1, 1), Fraction(0, 1))
    """
    source = quadratic_extension(field_, -1, "i")
    target = matrix_algebra(field_, 2)
    rows = [[1, 0], [0, -1], [0, 1], [1, 0]]
    return AlgebraHom(source, target, LinMap.from_rows(source.space, target.space, rows), name="k(i)->M2")


def diagonal_embedding(field_: Field, n: int) -> AlgebraHom:
    """k^n -> M_n(k), e_i ↦ E_ii."""
    source, target = diagonal_algebra(field_, n), matrix_algebra(field_, n)
    one = field_.one
    return AlgebraHom(
        source,
        target,
        LinMap.from_basis_images(source.space, target.space, lambda i: {i * n + i: one}),
        name=f"diag{n}",
    )


# Builders by name, as referenced from documents: {"builtin": name, "args": {...}}.
# Arguments named "algebra", "coalgebra" or "source"/"target" are resolved to definitions first.
ALGEBRA_BUILDERS: Dict[str, Callable[..., StructureAlgebra]] = {
    "field": field_algebra,
    "matrix": matrix_algebra,
    "upper_triangular": upper_triangular,
    "diagonal": diagonal_algebra,
    "quadratic": quadratic_algebra,
    "quadratic_extension": quadratic_extension,
    "dual_numbers": dual_numbers,
    "group": group_algebra,
}

COALGEBRA_BUILDERS: Dict[str, Callable[..., StructureCoalgebra]] = {
    "grouplike": grouplike_coalgebra,
    "comatrix": comatrix_coalgebra,
    "trivial": trivial_coalgebra,
}

HOM_BUILDERS: Dict[str, Callable[..., AlgebraHom]] = {
    "unit": unit_hom,
    "identity": identity_hom,
    "complex_to_matrices": complex_to_matrices,
    "diagonal_embedding": diagonal_embedding,
}

ENTWINING_BUILDERS: Dict[str, Callable[..., EntwiningStructure]] = {
    "swap": swap_entwining,
}
