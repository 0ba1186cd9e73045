"""Exhaustive reference implementation used to check the dynamic program.

Nothing here touches the prefix tables: blocks are read cell by cell.
"""
import logging
from typing import Optional

import numpy as np

from exceptions import EnumerationLimitError
from pydantic_models.core_model import KRecord, ObservationMatrix, SegConfig, Segmentation, validate_config
from segmentation.admissible import count_admissible, enumerate_admissible

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10 ** 7


def corner_mean(matrix: ObservationMatrix, n0: int) -> float:
    n = matrix.n
    return float(np.mean(matrix.values[:n0, n - n0:]))


def criterion_value(matrix: ObservationMatrix, cfg: SegConfig, t: Segmentation) -> float:
    """Criterion of segmentation t from its definition: block SSEs plus squared deviations of E0 from the corner mean."""
    n = matrix.n
    if t.n != n:
        raise ValueError(f"segmentation ends at {t.n}, matrix side is {n}")
    n0 = validate_config(cfg, n).n0
    values = matrix.values
    m01 = corner_mean(matrix, n0)

    in_block = np.zeros((n, n), dtype=bool)
    total = 0.0
    for a, b in t.blocks():
        rows, cols = np.triu_indices(b - a)
        cells = values[a + rows, a + cols]
        total += float(np.sum((cells - cells.mean()) ** 2))
        in_block[a + rows, a + cols] = True

    e0 = np.triu(np.ones((n, n), dtype=bool)) & ~in_block
    total += float(np.sum((values[e0] - m01) ** 2))
    return total


def brute_force_segment(matrix: ObservationMatrix, cfg: SegConfig, k: int) -> KRecord:
    """
    Minimise the criterion over every admissible segmentation with k blocks.

    Equal criteria are resolved like the dynamic program: smallest last
    boundary first, then the next-to-last, and so on.

    Raises:
        EnumerationLimitError: more than 10**7 candidates.
    """
    derived = validate_config(cfg, matrix.n)
    total = count_admissible(matrix.n, k, derived.l_min, derived.l_max)
    if total > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"{total} admissible segmentations for n={matrix.n}, K={k}; limit is {ENUMERATION_LIMIT}"
        )
    logger.debug(f"Brute force over {total} segmentations (n={matrix.n}, K={k})")

    best: Optional[Segmentation] = None
    best_value = np.inf
    for t in enumerate_admissible(matrix.n, k, derived.l_min, derived.l_max):
        value = criterion_value(matrix, cfg, t)
        if value < best_value or (
            value == best_value and t.boundaries[::-1] < best.boundaries[::-1]
        ):
            best, best_value = t, value

    if best is None:
        return KRecord(k=k)
    return KRecord(k=k, boundaries=best, criterion=best_value)
