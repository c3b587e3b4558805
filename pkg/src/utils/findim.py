"""
Based finite-dimensional spaces, linear maps, tensor indexing and quotients.

Tensor products use one global convention: the basis vector e_i ⊗ f_j of M ⊗ N has
index i * dim(N) + j. Every structure map in the package is transcribed against it.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.utils.exactla import (
    AffineSpace,
    DimensionMismatchError,
    Field,
    FieldMismatchError,
    Matrix,
    Scalar,
    SparseRow,
    Vector,
    reduced_pivots,
    solve_affine,
)

logger = logging.getLogger(__name__)

RelationInput = Union[Sequence[Scalar], Mapping[int, Scalar]]


@dataclass(frozen=True)
class BasedSpace:
    """
    A finite-dimensional vector space with a fixed ordered basis.

    Equality compares dimension and field only; labels and tensor factors are
    presentation data used when decoding witnesses.

    Attributes:
        dim: Dimension
        field: Scalar field
        labels: Optional distinct basis names
        factors: Dimensions of tensor factors, when the space was built by tensor_space
    """

    dim: int
    field: Field
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    factors: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"dimension must be non-negative, got {self.dim}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.dim:
                raise ValueError(f"expected {self.dim} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValueError("basis labels must be distinct")

    def label(self, index: int) -> str:
        if self.labels is not None:
            return self.labels[index]
        return f"e{index}"

    def decode(self, index: int) -> Tuple[int, ...]:
        """
        Split a basis index into per-factor indices (row-major).

        Examples:
            >>> k = Field.rational()
            >>> tensor_space(BasedSpace(2, k), BasedSpace(3, k)).decode(5)
            (1, 2)
        """
        if not self.factors:
            return (index,)
        digits = []
        for size in reversed(self.factors):
            index, digit = divmod(index, size)
            digits.append(digit)
        return tuple(reversed(digits))

    def zero_vector(self) -> Vector:
        return tuple(self.field.zero for _ in range(self.dim))

    def basis_vector(self, index: int) -> Vector:
        f = self.field
        return tuple(f.one if i == index else f.zero for i in range(self.dim))


def unit_space(field: Field) -> BasedSpace:
    """The base field k as a 1-dimensional space; k ⊗ M and M ⊗ k share M's indexing."""
    return BasedSpace(1, field, ("1",))


def _check_fields(*spaces: BasedSpace) -> None:
    fields = {s.field for s in spaces}
    if len(fields) > 1:
        raise FieldMismatchError(f"spaces over different fields: {sorted(str(f) for f in fields)}")


def tensor_space(m: BasedSpace, n: BasedSpace) -> BasedSpace:
    """
    Tensor product over the base field.

    Examples:
        >>> k = Field.rational()
        >>> tensor_space(BasedSpace(2, k), BasedSpace(3, k)).dim
        6
    """
    _check_fields(m, n)
    labels = None
    if m.labels is not None and n.labels is not None:
        labels = tuple(f"{a}⊗{b}" for a in m.labels for b in n.labels)
    factors = (m.factors or (m.dim,)) + (n.factors or (n.dim,))
    return BasedSpace(m.dim * n.dim, m.field, labels, factors)


def tensor_vector(field: Field, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Coordinates of x ⊗ y under the row-major convention."""
    return tuple(field.mul(a, b) for a in x for b in y)


def tensor_power(m: BasedSpace, n: int) -> BasedSpace:
    space = m
    for _ in range(n - 1):
        space = tensor_space(space, m)
    return space


def direct_sum_space(spaces: Sequence[BasedSpace], field: Optional[Field] = None) -> Tuple[BasedSpace, List[int]]:
    """Direct sum with block layout; returns the space and the offset of each summand."""
    if not spaces and field is None:
        raise ValueError("direct sum of no spaces needs an explicit field")
    _check_fields(*spaces)
    f = spaces[0].field if spaces else field
    offsets = []
    total = 0
    for s in spaces:
        offsets.append(total)
        total += s.dim
    return BasedSpace(total, f), offsets


@dataclass(frozen=True)
class LinMap:
    """
    A linear map between based spaces.

    The matrix is codomain.dim x domain.dim; column j is the image of basis vector j.
    """

    domain: BasedSpace
    codomain: BasedSpace
    matrix: Matrix

    def __post_init__(self) -> None:
        if self.domain.field != self.codomain.field or self.matrix.field != self.domain.field:
            raise FieldMismatchError("map, domain and codomain must share one field")
        if (self.matrix.rows, self.matrix.cols) != (self.codomain.dim, self.domain.dim):
            raise DimensionMismatchError(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {self.codomain.dim}x{self.domain.dim}"
            )

    # Constructors

    @classmethod
    def identity(cls, space: BasedSpace) -> "LinMap":
        return cls(space, space, Matrix.identity(space.field, space.dim))

    @classmethod
    def zero(cls, domain: BasedSpace, codomain: BasedSpace) -> "LinMap":
        return cls(domain, codomain, Matrix.zeros(domain.field, codomain.dim, domain.dim))

    @classmethod
    def from_rows(cls, domain: BasedSpace, codomain: BasedSpace, rows: Sequence[Sequence]) -> "LinMap":
        return cls(domain, codomain, Matrix.from_rows(domain.field, rows, cols=domain.dim))

    @classmethod
    def from_columns(cls, domain: BasedSpace, codomain: BasedSpace, columns: Sequence[Sequence[Scalar]]) -> "LinMap":
        if len(columns) != domain.dim:
            raise DimensionMismatchError(f"expected {domain.dim} columns, got {len(columns)}")
        return cls(domain, codomain, Matrix.from_columns(domain.field, codomain.dim, columns))

    @classmethod
    def from_entries(cls, domain: BasedSpace, codomain: BasedSpace, entries: Sequence[Scalar]) -> "LinMap":
        """Build from the row-major entries of the codomain.dim x domain.dim matrix."""
        n = domain.dim
        if len(entries) != codomain.dim * n:
            raise DimensionMismatchError(f"expected {codomain.dim * n} entries, got {len(entries)}")
        data = []
        for i in range(codomain.dim):
            data.append({j: v for j, v in enumerate(entries[i * n:(i + 1) * n]) if v != 0})
        return cls(domain, codomain, Matrix(domain.field, codomain.dim, n, data))

    @classmethod
    def from_basis_images(cls, domain: BasedSpace, codomain: BasedSpace, image: Callable[[int], SparseRow]) -> "LinMap":
        """Build from a function giving the sparse image of each domain basis vector."""
        columns = [image(j) for j in range(domain.dim)]
        return cls(domain, codomain, Matrix.from_sparse_columns(domain.field, codomain.dim, columns))

    @classmethod
    def from_vector(cls, space: BasedSpace, vector: Sequence[Scalar]) -> "LinMap":
        """The map k -> space sending 1 to vector."""
        return cls.from_columns(unit_space(space.field), space, [tuple(vector)])

    # Evaluation and algebra

    @property
    def field(self) -> Field:
        return self.domain.field

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        return self.matrix.entries

    def __call__(self, vector: Sequence[Scalar]) -> Vector:
        return self.matrix.apply(vector)

    def column(self, j: int) -> Vector:
        return self.matrix.column(j)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_parallel(other)
        return LinMap(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_parallel(other)
        return LinMap(self.domain, self.codomain, self.matrix - other.matrix)

    def scale(self, c: Scalar) -> "LinMap":
        return LinMap(self.domain, self.codomain, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def _check_parallel(self, other: "LinMap") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise DimensionMismatchError(
                f"maps {self.domain.dim}->{self.codomain.dim} and "
                f"{other.domain.dim}->{other.codomain.dim} are not parallel"
            )


def compose(f: LinMap, g: LinMap) -> LinMap:
    """
    The composite f ∘ g (apply g first).

    Raises:
        DimensionMismatchError: g's codomain is not f's domain
    """
    if g.codomain != f.domain:
        raise DimensionMismatchError(
            f"cannot compose {f.domain.dim}->{f.codomain.dim} after {g.domain.dim}->{g.codomain.dim}"
        )
    return LinMap(g.domain, f.codomain, f.matrix @ g.matrix)


def chain(*maps: LinMap) -> LinMap:
    """Compose maps listed in the order they are applied: chain(f, g, h) = h ∘ g ∘ f."""
    result = maps[0]
    for m in maps[1:]:
        result = compose(m, result)
    return result


def identity_map(space: BasedSpace) -> LinMap:
    return LinMap.identity(space)


def zero_map(domain: BasedSpace, codomain: BasedSpace) -> LinMap:
    return LinMap.zero(domain, codomain)


def tensor_map(*maps: LinMap) -> LinMap:
    """
    Tensor product of linear maps, consistent with tensor_space indexing.

    Several factors are combined left to right, so tensor_map(f, g, h) acts on
    (M ⊗ N) ⊗ P, whose indexing coincides with M ⊗ (N ⊗ P).
    """
    result = maps[0]
    for g in maps[1:]:
        _check_fields(result.domain, g.domain)
        result = LinMap(
            tensor_space(result.domain, g.domain),
            tensor_space(result.codomain, g.codomain),
            result.matrix.kron(g.matrix),
        )
    return result


def tensor_swap(m: BasedSpace, n: BasedSpace) -> LinMap:
    """The flip M ⊗ N -> N ⊗ M, e_i ⊗ f_j ↦ f_j ⊗ e_i."""
    domain = tensor_space(m, n)
    codomain = tensor_space(n, m)
    one = m.field.one
    return LinMap.from_basis_images(domain, codomain, lambda idx: {(idx % n.dim) * m.dim + idx // n.dim: one})


def inclusion(summands: Sequence[BasedSpace], index: int, total: Optional[BasedSpace] = None) -> LinMap:
    space, offsets = direct_sum_space(summands)
    one = space.field.one
    source = summands[index]
    return LinMap.from_basis_images(source, total or space, lambda j: {offsets[index] + j: one})


def projection(summands: Sequence[BasedSpace], index: int, total: Optional[BasedSpace] = None) -> LinMap:
    space, offsets = direct_sum_space(summands)
    one = space.field.one
    target = summands[index]
    lo, hi = offsets[index], offsets[index] + target.dim
    return LinMap.from_basis_images(total or space, target, lambda j: {j - lo: one} if lo <= j < hi else {})


@dataclass(frozen=True)
class Difference:
    """One domain basis vector on which two parallel maps disagree."""

    column: int
    location: Tuple[int, ...]
    lhs: Vector
    rhs: Vector


def first_difference(lhs: LinMap, rhs: LinMap, limit: int = 5) -> List[Difference]:
    """
    Up to `limit` domain columns where lhs and rhs differ, ascending.

    Locations are decoded through the domain's tensor factors.
    """
    lhs._check_parallel(rhs)
    columns = lhs.matrix.differing_columns(rhs.matrix)[:limit]
    return [Difference(j, lhs.domain.decode(j), lhs.column(j), rhs.column(j)) for j in columns]


@dataclass(frozen=True)
class QuotientSpace:
    """
    The quotient of an ambient space by the span of a set of relations.

    Attributes:
        ambient: Space being divided
        space: The quotient as a based space (basis = non-pivot ambient coordinates)
        relation_span: RREF rows spanning the killed subspace
        projection: ambient -> space
        section: space -> ambient, picking non-pivot representatives
    """

    ambient: BasedSpace
    space: BasedSpace
    relation_span: Matrix
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, vector: Sequence[Scalar]) -> Vector:
        return self.projection(vector)

    def lift(self, vector: Sequence[Scalar]) -> Vector:
        return self.section(vector)


def _as_sparse(relation: RelationInput, dim: int) -> SparseRow:
    if isinstance(relation, Mapping):
        return {j: v for j, v in relation.items() if v != 0}
    if len(relation) != dim:
        raise DimensionMismatchError(f"relation of length {len(relation)} in a space of dimension {dim}")
    return {j: v for j, v in enumerate(relation) if v != 0}


def quotient_by(ambient: BasedSpace, relations: Iterable[RelationInput]) -> QuotientSpace:
    """
    Quotient of ambient by the span of relations.

    The relations are reduced to RREF; the quotient basis is the set of non-pivot
    coordinates in ascending order, so equal spans always give identical quotients.

    Args:
        ambient: Space to divide
        relations: Dense vectors or sparse {index: value} dicts in ambient

    Returns:
        QuotientSpace: With projection ∘ section = id

    Examples:
        >>> k = Field.rational()
        >>> q = quotient_by(BasedSpace(2, k), [(1, -1)])
        >>> q.dim, q.project((1, 0)), q.project((0, 1))
        (1, (Fraction(1, 1),), (Fraction(1, 1),))
    """
    f = ambient.field
    n = ambient.dim
    pivots = reduced_pivots(f, (_as_sparse(r, n) for r in relations), n)
    free = [j for j in range(n) if j not in pivots]
    position = {c: idx for idx, c in enumerate(free)}

    labels = None
    if ambient.labels is not None:
        labels = tuple(ambient.labels[c] for c in free)
    quotient = BasedSpace(len(free), f, labels)

    proj_rows: List[SparseRow] = [{c: f.one} for c in free]
    for p, row in pivots.items():
        for c, v in row.items():
            if c != p:
                proj_rows[position[c]][p] = f.neg(v)
    proj = LinMap(ambient, quotient, Matrix(f, len(free), n, proj_rows))
    sec = LinMap.from_basis_images(quotient, ambient, lambda j: {free[j]: f.one})
    order = sorted(pivots)
    span = Matrix(f, len(order), n, [pivots[p] for p in order])
    logger.debug(f"quotient_by: ambient dim {n}, relation rank {len(order)}, quotient dim {len(free)}")
    return QuotientSpace(ambient, quotient, span, proj, sec)


Residual = Callable[[Vector], Union[LinMap, Sequence[Scalar]]]


class LinearConditionSystem:
    """
    Collects conditions that are affine in an unknown coordinate vector and solves them.

    Each condition is a residual function r with r(x) = 0 exactly when the condition
    holds. Its linear part is recovered column by column as r(e_j) - r(0), so every
    equation is written once, as an ordinary map builder, and reused by verifier and solver.

    Examples:
        >>> gf2 = Field.gf(2)
        >>> system = LinearConditionSystem(gf2, 2)
        >>> system.add("sum", lambda x: (gf2.sub(gf2.add(x[0], x[1]), 1),))
        >>> system.solve().particular
        (1, 0)
    """

    def __init__(self, field: Field, unknowns: int):
        self.field = field
        self.unknowns = unknowns
        self._conditions: List[Tuple[str, Residual]] = []

    def add(self, tag: str, residual: Residual) -> None:
        self._conditions.append((tag, residual))

    @property
    def tags(self) -> List[str]:
        return [tag for tag, _ in self._conditions]

    def _flatten(self, value: Union[LinMap, Sequence[Scalar]]) -> Vector:
        if isinstance(value, LinMap):
            return value.entries
        return tuple(value)

    def assemble(self) -> Tuple[Matrix, Vector]:
        """The matrix L and right-hand side b with r(x) = L x - b stacked over all conditions."""
        f = self.field
        zero_x = tuple(f.zero for _ in range(self.unknowns))
        offsets: List[int] = []
        base: List[Scalar] = []
        for _, residual in self._conditions:
            offsets.append(len(base))
            base.extend(self._flatten(residual(zero_x)))
        columns: List[Dict[int, Scalar]] = []
        for j in range(self.unknowns):
            e_j = tuple(f.one if i == j else f.zero for i in range(self.unknowns))
            column: Dict[int, Scalar] = {}
            for offset, (_, residual) in zip(offsets, self._conditions):
                for i, v in enumerate(self._flatten(residual(e_j))):
                    d = f.sub(v, base[offset + i])
                    if d != 0:
                        column[offset + i] = d
            columns.append(column)
        matrix = Matrix.from_sparse_columns(f, len(base), columns)
        rhs = tuple(f.neg(v) for v in base)
        return matrix, rhs

    def solve(self) -> AffineSpace:
        """
        Raises:
            NoSolution: The conditions are inconsistent
        """
        matrix, rhs = self.assemble()
        space = solve_affine(matrix, rhs)
        logger.debug(
            f"LinearConditionSystem {self.tags}: {matrix.rows} equations, {self.unknowns} unknowns, "
            f"solution dim {space.dim}"
        )
        return space


def cokernel(f: LinMap) -> QuotientSpace:
    """Quotient of f's codomain by its image; the relations are f's columns in domain order."""
    transpose = f.matrix.transpose()
    return quotient_by(f.codomain, (transpose.sparse_row(j) for j in range(transpose.rows)))
