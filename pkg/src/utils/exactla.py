"""
Exact scalar arithmetic and dense linear algebra over Q and GF(p).

This module provides the numeric substrate for every checker and solver:
- Field descriptors for the rationals and prime fields
- ExactScalar values with checked arithmetic
- Matrix values (dense interface, nonzero-only row storage)
- Row reduction, rank and kernels through sympy DomainMatrix over QQ or GF(p)
- Affine solving and enumeration of finite affine spaces

Floating point never appears here; rationals use arbitrary-precision Fractions.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Tuple[Scalar, ...]
SparseRow = Dict[int, Scalar]

MAX_MODULUS = 2**31

_FIELD_PATTERN = re.compile(r"^\s*(?:Q|QQ|GF\(\s*(\d+)\s*\))\s*$")


class ExactLAError(Exception):
    """Base exception for exact linear algebra errors."""

    pass


class FieldMismatchError(ExactLAError):
    """Exception raised when operands live over different fields."""

    pass


class DimensionMismatchError(ExactLAError):
    """Exception raised when matrix or vector shapes do not compose."""

    pass


class NoSolution(ExactLAError):
    """Exception raised when a linear system is inconsistent."""

    pass


class LimitExceeded(ExactLAError):
    """Exception raised when an enumeration would exceed its candidate limit."""

    def __init__(self, size: int, limit: int):
        super().__init__(f"enumeration of {size} candidates exceeds limit {limit}")
        self.size = size
        self.limit = limit


class InfiniteField(ExactLAError):
    """Exception raised when enumeration is requested over the rationals."""

    pass


@dataclass(frozen=True)
class Field:
    """
    Field descriptor: the rationals (p = 0) or the prime field GF(p).

    Values are plain Python objects: Fractions over Q, ints in [0, p) over GF(p).

    Attributes:
        p: 0 for Q, otherwise a prime below 2^31
    """

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0:
            if not isinstance(self.p, int) or self.p >= MAX_MODULUS:
                raise ValueError(f"modulus must be an integer below 2^31, got: {self.p}")
            if not isprime(self.p):
                raise ValueError(f"modulus must be prime, got: {self.p}")

    @classmethod
    def rational(cls) -> "Field":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """
        Parse a field descriptor.

        Args:
            text: "Q" or "GF(p)"

        Returns:
            Field: Parsed descriptor

        Raises:
            ValueError: Malformed descriptor or non-prime modulus

        Examples:
            >>> Field.parse("GF(3)")
            Field(p=3)
            >>> Field.parse("Q").is_finite
            False
        """
        match = _FIELD_PATTERN.match(text)
        if not match:
            raise ValueError(f"field must be 'Q' or 'GF(p)', got: {text!r}")
        if match.group(1) is None:
            return cls(0)
        return cls(int(match.group(1)))

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def order(self) -> Optional[int]:
        return self.p if self.p else None

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    def coerce(self, value: Union[int, Fraction, str]) -> Scalar:
        """Bring an int, Fraction or scalar string into canonical form."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.p:
            if isinstance(value, Fraction):
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    def parse_scalar(self, text: str) -> Scalar:
        """
        Parse a scalar string such as "3/4", "-2" or "5".

        Examples:
            >>> Field.parse("GF(5)").parse_scalar("3/4")
            2
            >>> Field.rational().parse_scalar("-6/8")
            Fraction(-3, 4)
        """
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"invalid scalar {text!r}: {e}") from e
        if self.p and value.denominator % self.p == 0:
            raise ValueError(f"scalar {text!r} has a denominator divisible by {self.p}")
        return self.coerce(value)

    def format(self, value: Scalar) -> str:
        if self.p:
            return str(value)
        return str(Fraction(value))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[Scalar]:
        if not self.p:
            raise InfiniteField("the rationals cannot be enumerated")
        return iter(range(self.p))


@dataclass(frozen=True)
class ExactScalar:
    """
    An exact scalar tagged with its field.

    Binary operations require matching fields; mixing Q and GF(p) raises FieldMismatchError.
    """

    field: Field
    value: Scalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _check(self, other: "ExactScalar") -> None:
        if not isinstance(other, ExactScalar):
            raise TypeError(f"expected ExactScalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine scalars over {self.field} and {other.field}")

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        self._check(other)
        return ExactScalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        self._check(other)
        return ExactScalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        self._check(other)
        return ExactScalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        self._check(other)
        return ExactScalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.field, self.field.neg(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.field.format(self.value)


class Matrix:
    """
    Matrix over an exact field.

    The interface is dense and row-major (``entries``, ``to_rows``); internally each row
    keeps only its nonzero entries so that Kronecker products of identities stay cheap.
    Instances are treated as immutable values.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, rows: int, cols: int, data: Optional[Sequence[SparseRow]] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [{} for _ in range(rows)]
        if len(data) != rows:
            raise DimensionMismatchError(f"expected {rows} rows, got {len(data)}")
        self._data: Tuple[SparseRow, ...] = tuple(data)

    # Construction

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_rows(
        cls, field: Field, rows: Sequence[Sequence[Union[int, Fraction, str]]], cols: Optional[int] = None
    ) -> "Matrix":
        """
        Build a matrix from a dense list of rows, coercing every entry into the field.

        Examples:
            >>> m = Matrix.from_rows(Field.rational(), [[2, 4], [1, 2]])
            >>> (m.rows, m.cols)
            (2, 2)
        """
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatchError(f"row {i} has length {len(row)}, expected {cols}")
            sparse = {}
            for j, value in enumerate(row):
                v = field.coerce(value)
                if v != 0:
                    sparse[j] = v
            data.append(sparse)
        return cls(field, len(rows), cols, data)

    @classmethod
    def from_columns(cls, field: Field, rows: int, columns: Sequence[Sequence[Scalar]]) -> "Matrix":
        data: List[SparseRow] = [{} for _ in range(rows)]
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionMismatchError(f"column {j} has length {len(column)}, expected {rows}")
            for i, value in enumerate(column):
                if value != 0:
                    data[i][j] = value
        return cls(field, rows, len(columns), data)

    @classmethod
    def from_sparse_columns(cls, field: Field, rows: int, columns: Sequence[SparseRow]) -> "Matrix":
        data: List[SparseRow] = [{} for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, value in column.items():
                if value != 0:
                    data[i][j] = value
        return cls(field, rows, len(columns), data)

    # Access

    @property
    def entries(self) -> Tuple[Scalar, ...]:
        zero = self.field.zero
        return tuple(row.get(j, zero) for row in self._data for j in range(self.cols))

    def entry(self, i: int, j: int) -> Scalar:
        return self._data[i].get(j, self.field.zero)

    def sparse_row(self, i: int) -> SparseRow:
        return self._data[i]

    def row(self, i: int) -> Vector:
        zero = self.field.zero
        data = self._data[i]
        return tuple(data.get(j, zero) for j in range(self.cols))

    def column(self, j: int) -> Vector:
        zero = self.field.zero
        return tuple(row.get(j, zero) for row in self._data)

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nnz(self) -> int:
        return sum(len(row) for row in self._data)

    def is_zero(self) -> bool:
        return all(not row for row in self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.rows}x{self.cols}, nnz={self.nnz()})"

    # Arithmetic

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"cannot combine matrices over {self.field} and {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        p = f.p
        result = []
        for row in self._data:
            acc: SparseRow = {}
            for k, a in row.items():
                for j, b in other._data[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            if p:
                acc = {j: v % p for j, v in acc.items() if v % p}
            else:
                acc = {j: v for j, v in acc.items() if v != 0}
            result.append(acc)
        return Matrix(f, self.rows, other.cols, result)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )
        f = self.field
        data = []
        for a, b in zip(self._data, other._data):
            acc = dict(a)
            for j, v in b.items():
                nv = f.add(acc.get(j, f.zero), v) if sign > 0 else f.sub(acc.get(j, f.zero), v)
                if nv == 0:
                    acc.pop(j, None)
                else:
                    acc[j] = nv
            data.append(acc)
        return Matrix(f, self.rows, self.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        if c == 0:
            return Matrix.zeros(f, self.rows, self.cols)
        return Matrix(f, self.rows, self.cols, [{j: f.mul(c, v) for j, v in row.items()} for row in self._data])

    def kron(self, other: "Matrix") -> "Matrix":
        """
        Kronecker product with row-major block layout.

        Entry ((i, k), (j, l)) is self[i][j] * other[k][l], row index i * other.rows + k.
        """
        self._check_field(other)
        f = self.field
        data = []
        for row_a in self._data:
            for row_b in other._data:
                acc: SparseRow = {}
                for j, a in row_a.items():
                    base = j * other.cols
                    for l, b in row_b.items():
                        acc[base + l] = f.mul(a, b)
                data.append(acc)
        return Matrix(f, self.rows * other.rows, self.cols * other.cols, data)

    def transpose(self) -> "Matrix":
        data: List[SparseRow] = [{} for _ in range(self.cols)]
        for i, row in enumerate(self._data):
            for j, v in row.items():
                data[j][i] = v
        return Matrix(self.field, self.cols, self.rows, data)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for {self.rows}x{self.cols} matrix")
        f = self.field
        out = []
        for row in self._data:
            acc = f.zero
            for j, a in row.items():
                x = vector[j]
                if x != 0:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return Matrix(self.field, self.rows + other.rows, self.cols, list(self._data) + list(other._data))

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        data = []
        for a, b in zip(self._data, other._data):
            row = dict(a)
            row.update({self.cols + j: v for j, v in b.items()})
            data.append(row)
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    def differing_columns(self, other: "Matrix") -> List[int]:
        """Indices of columns where the two matrices disagree, ascending."""
        self._check_field(other)
        cols = set()
        for a, b in zip(self._data, other._data):
            for j in set(a) | set(b):
                if a.get(j, 0) != b.get(j, 0):
                    cols.add(j)
        return sorted(cols)


@dataclass(frozen=True)
class AffineSpace:
    """
    Solution set particular + span(kernel_basis) of a linear system.

    Attributes:
        field: Field of the coordinates
        particular: One solution
        kernel_basis: Linearly independent null-space vectors
    """

    field: Field
    particular: Vector
    kernel_basis: Tuple[Vector, ...] = field(default_factory=tuple)

    @property
    def ambient_dim(self) -> int:
        return len(self.particular)

    @property
    def dim(self) -> int:
        return len(self.kernel_basis)

    def size(self) -> Optional[int]:
        """Number of points, or None over Q."""
        if not self.field.is_finite:
            return None
        return self.field.p ** self.dim

    def point(self, coefficients: Sequence[Scalar]) -> Vector:
        f = self.field
        out = list(self.particular)
        for c, v in zip(coefficients, self.kernel_basis):
            if c == 0:
                continue
            for i, x in enumerate(v):
                if x != 0:
                    out[i] = f.add(out[i], f.mul(c, x))
        return tuple(out)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        """Membership test by rank comparison."""
        f = self.field
        diff = tuple(f.sub(a, b) for a, b in zip(vector, self.particular))
        if not any(diff):
            return True
        if not self.kernel_basis:
            return False
        base = Matrix.from_columns(f, self.ambient_dim, list(self.kernel_basis))
        extended = base.hstack(Matrix.from_columns(f, self.ambient_dim, [diff]))
        return rank(base) == rank(extended)


def _domain(field: Field) -> Domain:
    return GF(field.p, symmetric=False) if field.p else QQ


def _to_domain(domain: Domain, field: Field, value: Scalar):
    if field.p:
        return domain(int(value))
    value = Fraction(value)
    return domain(value.numerator, value.denominator)


def _from_domain(field: Field, value) -> Scalar:
    if field.p:
        return int(value) % field.p
    return Fraction(int(value.numerator), int(value.denominator))


def _sparse(field: Field, row: Sequence) -> SparseRow:
    out: SparseRow = {}
    for j, value in enumerate(row):
        v = _from_domain(field, value)
        if v != 0:
            out[j] = v
    return out


def to_domain_matrix(field: Field, rows: Sequence[SparseRow], cols: int) -> DomainMatrix:
    """Dense sympy DomainMatrix over QQ or GF(p) holding the given sparse rows."""
    domain = _domain(field)
    dense = [[domain.zero] * cols for _ in rows]
    for i, row in enumerate(rows):
        for j, value in row.items():
            dense[i][j] = _to_domain(domain, field, value)
    return DomainMatrix(dense, (len(dense), cols), domain)


def reduced_pivots(field: Field, rows: Iterable[SparseRow], cols: int) -> Dict[int, SparseRow]:
    """Fully reduced pivot rows (RREF rows keyed by pivot column) of a row collection."""
    rows = list(rows)
    if not rows or cols == 0:
        return {}
    reduced, pivots = to_domain_matrix(field, rows, cols).rref()
    data = reduced.to_list()
    return {p: _sparse(field, data[i]) for i, p in enumerate(pivots)}


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form.

    Args:
        m: Input matrix

    Returns:
        Tuple of the unique RREF (same shape, zero rows last) and the strictly increasing pivot columns

    Examples:
        >>> r, pivots = rref(Matrix.from_rows(Field.rational(), [[2, 4], [1, 2]]))
        >>> r.to_rows(), pivots
        ([[Fraction(1, 1), Fraction(2, 1)], [Fraction(0, 1), Fraction(0, 1)]], [0])
    """
    pivots = reduced_pivots(m.field, (m.sparse_row(i) for i in range(m.rows)), m.cols)
    order = sorted(pivots)
    data = [pivots[p] for p in order] + [{} for _ in range(m.rows - len(order))]
    return Matrix(m.field, m.rows, m.cols, data), order


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return to_domain_matrix(m.field, [m.sparse_row(i) for i in range(m.rows)], m.cols).rank()


def nullspace(m: Matrix) -> List[Vector]:
    """
    Basis of {x : m x = 0}, one vector per free column in ascending order.

    Each vector is scaled so that its last nonzero entry, which sits in its free column, is 1.
    """
    f = m.field
    if m.rows == 0:
        return [tuple(f.one if i == j else f.zero for i in range(m.cols)) for j in range(m.cols)]
    if m.cols == 0:
        return []
    kernel = to_domain_matrix(f, [m.sparse_row(i) for i in range(m.rows)], m.cols).nullspace()
    basis = []
    for row in kernel.to_list():
        v = [_from_domain(f, value) for value in row]
        inv = f.inv(next(x for x in reversed(v) if x != 0))
        basis.append(tuple(f.mul(inv, x) for x in v))
    return basis


def solve_affine(a: Matrix, b: Sequence[Scalar]) -> AffineSpace:
    """
    Solve a x = b exactly.

    Args:
        a: Coefficient matrix
        b: Right-hand side, length a.rows

    Returns:
        AffineSpace: Particular solution (free coordinates zero) and a null-space basis

    Raises:
        DimensionMismatchError: len(b) != a.rows
        NoSolution: rank(a) < rank([a | b])

    Examples:
        >>> gf2 = Field.gf(2)
        >>> s = solve_affine(Matrix.from_rows(gf2, [[1, 1]]), [1])
        >>> s.particular, s.kernel_basis
        ((1, 0), ((1, 1),))
    """
    if len(b) != a.rows:
        raise DimensionMismatchError(f"right-hand side has length {len(b)}, expected {a.rows}")
    f = a.field
    n = a.cols
    augmented = []
    for i in range(a.rows):
        row = dict(a.sparse_row(i))
        value = f.coerce(b[i])
        if value != 0:
            row[n] = value
        augmented.append(row)
    pivots = reduced_pivots(f, augmented, n + 1)
    if n in pivots:
        raise NoSolution(f"inconsistent system: rank {len(pivots) - 1} < augmented rank {len(pivots)}")
    particular = [f.zero] * n
    for p, row in pivots.items():
        particular[p] = row.get(n, f.zero)
    kernel = nullspace(a)
    logger.debug(f"solve_affine: {a.rows}x{n} system, rank {len(pivots)}, kernel dim {len(kernel)}")
    return AffineSpace(f, tuple(particular), tuple(kernel))


def enumerate_affine(space: AffineSpace, limit: int) -> Iterator[Vector]:
    """
    Stream every point of a finite affine space exactly once.

    Points come in lexicographic order of their kernel coefficients (first coefficient most
    significant), which fixes the output order of every solver.

    Args:
        space: Affine space over GF(p)
        limit: Maximum number of candidates allowed

    Raises:
        InfiniteField: Space is over Q
        LimitExceeded: p ** dim > limit

    Examples:
        >>> s = AffineSpace(Field.gf(2), (1, 0), ((1, 1),))
        >>> list(enumerate_affine(s, 10))
        [(1, 0), (0, 1)]
    """
    if not space.field.is_finite:
        raise InfiniteField("affine spaces over Q cannot be enumerated; only verification is supported")
    size = space.size()
    if size > limit:
        raise LimitExceeded(size, limit)
    return _enumerate(space)


def _enumerate(space: AffineSpace) -> Iterator[Vector]:
    for coefficients in itertools.product(range(space.field.p), repeat=space.dim):
        yield space.point(coefficients)
