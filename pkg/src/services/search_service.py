"""
Linear-then-filter witness search shared by every solver.

The linear conditions are solved exactly; the resulting affine space is enumerated in
the fixed lexicographic order and each point is filtered by the quadratic condition.
"""

import logging
from typing import Callable, List, Optional

from src.config import settings
from src.utils.exactla import AffineSpace, NoSolution, Vector, enumerate_affine
from src.utils.findim import LinearConditionSystem

logger = logging.getLogger(__name__)

LIMIT_WARNING_RATIO = 0.9


def linear_space(system: LinearConditionSystem, kind: str) -> Optional[AffineSpace]:
    """Solution space of the linear conditions, or None when they are inconsistent."""
    try:
        space = system.solve()
    except NoSolution:
        logger.info(f"{kind}: linear conditions {system.tags} are inconsistent")
        return None
    size = space.size()
    logger.info(
        f"{kind}: linear conditions {system.tags} leave an affine space of dim {space.dim} "
        f"({size if size is not None else 'infinitely many'} candidates)"
    )
    return space


def search(
    system: LinearConditionSystem,
    accept: Callable[[Vector], bool],
    kind: str,
    limit: Optional[int] = None,
) -> List[Vector]:
    """
    Enumerate the solutions of the linear conditions and keep those passing `accept`.

    Args:
        system: Linear part of the conditions
        accept: Quadratic filter
        kind: Solver name for log messages
        limit: Candidate limit (defaults to settings.ENUMERATION_LIMIT)

    Returns:
        List[Vector]: Accepted points in enumeration order

    Raises:
        LimitExceeded: Too many candidates
        InfiniteField: Scalars are rational
    """
    limit = limit if limit is not None else settings.ENUMERATION_LIMIT
    space = linear_space(system, kind)
    if space is None:
        return []
    size = space.size()
    if size is not None and LIMIT_WARNING_RATIO * limit <= size <= limit:
        logger.warning(f"{kind}: {size} candidates is close to the enumeration limit {limit}")
    found = [x for x in enumerate_affine(space, limit) if accept(x)]
    logger.info(f"{kind}: {len(found)} solution(s) out of {size} candidates")
    return found
