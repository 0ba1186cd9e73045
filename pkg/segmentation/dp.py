"""Exact minimisation of the segmentation criterion by dynamic programming.

cost[k][j] is the smallest sum of block costs covering [0, j) with exactly
k admissible blocks, with the recurrence

    cost[k][j] = min_{j - l_max <= i <= j - l_min} cost[k-1][i] + g(i, j)

Inner ties go to the smallest i, so among optimal segmentations the one with
the smallest last boundary wins, then the smallest next-to-last, and so on.
For K >= 3 this is not always the lexicographically smallest vector.
One table up to k_max serves every K.
"""
import logging
import time

import numpy as np
from pydantic import BaseModel, ConfigDict

from exceptions import ConfigurationError
from pydantic_models.core_model import (
    DerivedConstants,
    KRecord,
    ObservationMatrix,
    SegConfig,
    Segmentation,
    SegmentationResult,
    validate_config,
)
from segmentation.prefix_stats import PrefixStats, cost_matrix, fitted_means

logger = logging.getLogger(__name__)


class DPTable(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cost: np.ndarray
    arg: np.ndarray
    c0: float

    @property
    def k_max(self) -> int:
        return self.cost.shape[0] - 1

    @property
    def n(self) -> int:
        return self.cost.shape[1] - 1

    def backtrack(self, k: int) -> Segmentation:
        boundaries = [self.n]
        j = self.n
        for row in range(k, 0, -1):
            j = int(self.arg[row, j])
            boundaries.append(j)
        return Segmentation(boundaries=tuple(reversed(boundaries)))

    def record(self, k: int) -> KRecord:
        total = self.cost[k, self.n]
        if not np.isfinite(total):
            return KRecord(k=k)
        return KRecord(k=k, boundaries=self.backtrack(k), criterion=float(self.c0 + total))


def fill_table(stats: PrefixStats, derived: DerivedConstants, k_max: int) -> DPTable:
    n, l_min, l_max = stats.n, derived.l_min, derived.l_max
    # row j holds g(., j) so the inner window is a contiguous slice
    costs_by_end = np.ascontiguousarray(cost_matrix(stats, l_min, l_max).T)

    cost = np.full((k_max + 1, n + 1), np.inf)
    arg = np.full((k_max + 1, n + 1), -1, dtype=np.int64)
    cost[0, 0] = 0.0

    for k in range(1, k_max + 1):
        prev = cost[k - 1]
        row, row_arg = cost[k], arg[k]
        for j in range(k * l_min, min(n, k * l_max) + 1):
            lo = max(0, j - l_max)
            hi = j - l_min
            candidates = prev[lo:hi + 1] + costs_by_end[j, lo:hi + 1]
            best = int(np.argmin(candidates))
            if np.isfinite(candidates[best]):
                row[j] = candidates[best]
                row_arg[j] = lo + best

    cost.setflags(write=False)
    arg.setflags(write=False)
    return DPTable(cost=cost, arg=arg, c0=stats.c0)


def segment_for_k(stats: PrefixStats, cfg: SegConfig, k: int) -> KRecord:
    """Optimal segmentation with exactly k blocks; an infeasible k gives a record without boundaries."""
    if not 1 <= k <= cfg.k_max:
        raise ValueError(f"K={k} is outside [1, k_max={cfg.k_max}]")
    derived = validate_config(cfg, stats.n)
    return fill_table(stats, derived, k).record(k)


def select_k(stats: PrefixStats, cfg: SegConfig) -> SegmentationResult:
    """
    Run the DP up to k_max and pick the number of blocks with the smallest
    criterion, without any penalty. Ties go to the smallest K.
    """
    derived = validate_config(cfg, stats.n)
    if not derived.feasible_ks():
        raise ConfigurationError(f"no feasible K in [1, {cfg.k_max}] for n={stats.n}")

    started = time.perf_counter()
    table = fill_table(stats, derived, cfg.k_max)
    per_k = [table.record(k) for k in range(1, cfg.k_max + 1)]

    best = None
    for rec in per_k:
        if rec.feasible and (best is None or rec.criterion < best.criterion):
            best = rec

    elapsed = time.perf_counter() - started
    logger.info(
        f"Segmented n={stats.n} up to K={cfg.k_max} in {elapsed:.3f}s: "
        f"K_hat={best.k}, criterion={best.criterion:.6g}"
    )
    return SegmentationResult(
        n=stats.n,
        config=cfg,
        per_k=per_k,
        k_hat=best.k,
        boundaries_hat=best.boundaries,
        m01=stats.m01,
        block_means=fitted_means(stats, best.boundaries),
    )


def fitted_matrix(result: SegmentationResult) -> ObservationMatrix:
    """Estimated mean matrix: mu_hat_k on each diagonal block (and its mirror), m01 elsewhere."""
    n = result.n
    values = np.full((n, n), result.m01)
    for (a, b), mean in zip(result.boundaries_hat.blocks(), result.block_means):
        values[a:b, a:b] = mean
    return ObservationMatrix(values=values)
