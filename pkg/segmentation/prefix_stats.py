"""Summed-area statistics giving O(1) sums over diagonal triangles.

A diagonal block [a, b) of a symmetric matrix is half of the square
[a, b) x [a, b) plus half of its diagonal, so one 2D prefix table and one
diagonal prefix vector answer every block query.
"""
import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from pydantic_models.core_model import ObservationMatrix, SegConfig, validate_config

logger = logging.getLogger(__name__)


def _prefix2d(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    table = np.zeros((n + 1, n + 1), dtype=np.float64)
    table[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)
    return table


def _prefix1d(values: np.ndarray) -> np.ndarray:
    table = np.zeros(values.shape[0] + 1, dtype=np.float64)
    table[1:] = values.cumsum()
    return table


class PrefixStats(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    n0: int
    S: np.ndarray
    S2: np.ndarray
    d: np.ndarray
    d2: np.ndarray
    m01: float
    g01_count: int
    c0: float

    def rect_sum(self, r0: int, r1: int, c0: int, c1: int) -> Tuple[float, float]:
        """Sums of Y and Y^2 over rows [r0, r1) x columns [c0, c1)."""
        s = self.S[r1, c1] - self.S[r0, c1] - self.S[r1, c0] + self.S[r0, c0]
        q = self.S2[r1, c1] - self.S2[r0, c1] - self.S2[r1, c0] + self.S2[r0, c0]
        return float(s), float(q)


def build_stats(matrix: ObservationMatrix, cfg: SegConfig) -> PrefixStats:
    derived = validate_config(cfg, matrix.n)
    n, n0 = matrix.n, derived.n0
    values = matrix.values
    squares = values * values

    S = _prefix2d(values)
    S2 = _prefix2d(squares)
    diag = np.diagonal(values)
    d = _prefix1d(diag)
    d2 = _prefix1d(diag * diag)
    for table in (S, S2, d, d2):
        table.setflags(write=False)

    g01_count = n0 * n0
    corner = S[n0, n] - S[0, n] - S[n0, n - n0] + S[0, n - n0]
    m01 = float(corner / g01_count)
    # summed directly rather than from prefixes to avoid cancellation
    c0 = float(np.sum(np.triu(values - m01) ** 2))

    logger.debug(f"Built prefix statistics: n={n}, n0={n0}, m01={m01:.6g}, c0={c0:.6g}")
    return PrefixStats(
        n=n, n0=n0, S=S, S2=S2, d=d, d2=d2, m01=m01, g01_count=g01_count, c0=c0
    )


def _check_range(stats: PrefixStats, a: int, b: int) -> None:
    if not (0 <= a < b <= stats.n):
        raise ValueError(f"block [{a}, {b}) is not a valid range for n={stats.n}")


def tri_sum(stats: PrefixStats, a: int, b: int) -> Tuple[float, float, int]:
    """Sum of Y, sum of Y^2 and cell count over {a <= i <= j < b}."""
    _check_range(stats, a, b)
    rect_s, rect_q = stats.rect_sum(a, b, a, b)
    s = (rect_s + (stats.d[b] - stats.d[a])) / 2.0
    q = (rect_q + (stats.d2[b] - stats.d2[a])) / 2.0
    length = b - a
    return float(s), float(q), length * (length + 1) // 2


def segment_cost(stats: PrefixStats, a: int, b: int) -> float:
    """
    Additive cost of block [a, b): its within-block SSE minus what its cells
    would contribute to the baseline term, so Q = c0 + sum of block costs.

    sq_sum - sum^2/count - (sq_sum - 2*m01*sum + m01^2*count) reduces to
    -(sum - m01*count)^2 / count; the squared sums cancel exactly.
    """
    s, _, count = tri_sum(stats, a, b)
    excess = s - stats.m01 * count
    return -(excess * excess) / count


def cost_matrix(stats: PrefixStats, l_min: int, l_max: int) -> np.ndarray:
    """All block costs at once: entry [a, b] is segment_cost(a, b), +inf when b - a is outside [l_min, l_max]."""
    n = stats.n
    S, d = stats.S, stats.d
    diag_S = np.diagonal(S)
    a = np.arange(n + 1)[:, None]
    b = np.arange(n + 1)[None, :]
    length = b - a

    rect = diag_S[None, :] - S - S.T + diag_S[:, None]
    s = (rect + (d[None, :] - d[:, None])) / 2.0
    count = length * (length + 1) / 2.0

    valid = (length >= l_min) & (length <= l_max)
    costs = np.full((n + 1, n + 1), np.inf)
    excess = s[valid] - stats.m01 * count[valid]
    costs[valid] = -(excess * excess) / count[valid]
    return costs


def fitted_means(stats: PrefixStats, boundaries) -> Tuple[float, ...]:
    means = []
    for a, b in boundaries.blocks():
        s, _, count = tri_sum(stats, a, b)
        means.append(s / count)
    return tuple(means)
