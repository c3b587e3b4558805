"""Hypothesis strategies for small exact matrices and linear maps."""

from hypothesis import strategies as st

from src.utils.exactla import Field, Matrix
from src.utils.findim import BasedSpace, LinMap


@st.composite
def matrices(draw, field: Field, max_rows: int = 4, max_cols: int = 4, rows: int = None, cols: int = None) -> Matrix:
    """Dense matrices over GF(p), or over Q with small integer entries."""
    r = rows if rows is not None else draw(st.integers(1, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    bound = field.p - 1 if field.is_finite else 3
    low = 0 if field.is_finite else -3
    entries = draw(st.lists(st.lists(st.integers(low, bound), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(field, entries, cols=c)


@st.composite
def linear_maps(draw, domain: BasedSpace, codomain: BasedSpace) -> LinMap:
    m = draw(matrices(domain.field, rows=codomain.dim, cols=domain.dim))
    return LinMap(domain, codomain, m)
