"""Counting, enumerating and sampling the admissible segmentations.

The admissible set for (n, K, lo, hi) is every boundary vector
0 = b_0 < ... < b_K = n whose block lengths all lie in [lo, hi].
"""
from functools import lru_cache
from typing import Iterator, List, Tuple

import numpy as np

from pydantic_models.core_model import Segmentation


@lru_cache(maxsize=64)
def _ways(length: int, k: int, lo: int, hi: int) -> Tuple[Tuple[int, ...], ...]:
    """ways[r][m]: number of ways to cut a stretch of m cells into r blocks."""
    ways = [[0] * (length + 1) for _ in range(k + 1)]
    ways[0][0] = 1
    for r in range(1, k + 1):
        for m in range(1, length + 1):
            ways[r][m] = sum(ways[r - 1][m - size] for size in range(lo, min(hi, m) + 1))
    return tuple(tuple(row) for row in ways)


def count_admissible(n: int, k: int, lo: int, hi: int) -> int:
    return _ways(n, k, lo, hi)[k][n]


def enumerate_admissible(n: int, k: int, lo: int, hi: int) -> Iterator[Segmentation]:
    """Every admissible segmentation, in lexicographic order of the boundary vector."""
    ways = _ways(n, k, lo, hi)
    boundaries: List[int] = [0]

    def extend(position: int, remaining: int) -> Iterator[Segmentation]:
        if remaining == 0:
            yield Segmentation(boundaries=tuple(boundaries))
            return
        for size in range(lo, min(hi, n - position) + 1):
            if ways[remaining - 1][n - position - size] == 0:
                continue
            boundaries.append(position + size)
            yield from extend(position + size, remaining - 1)
            boundaries.pop()

    if ways[k][n]:
        yield from extend(0, k)


def sample_admissible(
    n: int, k: int, lo: int, hi: int, rng: np.random.Generator
) -> Segmentation:
    """One segmentation drawn uniformly from the admissible set."""
    ways = _ways(n, k, lo, hi)
    if ways[k][n] == 0:
        raise ValueError(f"no admissible segmentation for n={n}, K={k}, lengths in [{lo}, {hi}]")
    boundaries = [0]
    position = 0
    for remaining in range(k, 0, -1):
        sizes = [s for s in range(lo, min(hi, n - position) + 1) if ways[remaining - 1][n - position - s]]
        weights = np.array([float(ways[remaining - 1][n - position - s]) for s in sizes])
        size = sizes[int(rng.choice(len(sizes), p=weights / weights.sum()))]
        position += size
        boundaries.append(position)
    return Segmentation(boundaries=tuple(boundaries))
