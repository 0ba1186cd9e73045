"""Deterministic and random parts of the normalised criterion gap.

For a candidate segmentation t with K blocks and the truth t* with K* blocks,

    J(t) = 2 / (n(n+1)) * (Q^K(t) - Q^K*(t*)) = B(t) + V(t) + W(t) + Z(t)

where B depends only on the means and V, W, Z collect the noise terms.
Everything is computed by direct sweeps over cells; these routines check
the fast path and run at desk scale only.

Both t and t* must keep every block clear of the G01 corner and the corner
must carry the baseline mean (omega = 0); otherwise the identity above does
not hold and the routines refuse to run.
"""
import logging
from functools import lru_cache
from typing import Tuple

import numpy as np

from exceptions import TheoryPreconditionError
from pydantic_models.core_model import (
    DerivedConstants,
    GroundTruth,
    ObservationMatrix,
    SegConfig,
    Segmentation,
    validate_config,
)
from pydantic_models.evaluation_model import IntersectionCounts, TheoryDecomposition
from pydantic_models.simulation_model import SimSpec
from segmentation.admissible import count_admissible, sample_admissible
from segmentation.brute_force import criterion_value
from simulation.generator import generate, mean_matrix

logger = logging.getLogger(__name__)


@lru_cache(maxsize=32)
def _sweep_cells(n: int, n0: int) -> Tuple[np.ndarray, np.ndarray]:
    """Row and column indices of the upper triangle with the G01 corner removed."""
    rows, cols = np.triu_indices(n)
    keep = ~((rows < n0) & (cols >= n - n0))
    return rows[keep], cols[keep]


def block_labels(t: Segmentation) -> np.ndarray:
    """labels[i] = 1-based index of the block holding row i."""
    return np.repeat(np.arange(1, t.k + 1), t.lengths())


def _cell_labels(labels: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    # a cell belongs to block k when both its row and column do; else to the baseline (0)
    row_labels = labels[rows]
    return np.where(row_labels == labels[cols], row_labels, 0)


class CountSweep:
    """Truth-side labels precomputed once, reused for many candidate segmentations."""

    def __init__(self, truth: GroundTruth, cfg: SegConfig, n: int):
        self.n = n
        self.n0 = validate_config(cfg, n).n0
        self.truth = truth
        self.rows, self.cols = _sweep_cells(n, self.n0)
        self.true_cells = _cell_labels(block_labels(truth.segmentation(n)), self.rows, self.cols)
        self.means = np.array((truth.mu0,) + tuple(truth.mu))
        self.mean_gaps = (self.means[:, None] - self.means[None, :]) ** 2

    def counts(self, t: Segmentation) -> IntersectionCounts:
        if t.n != self.n:
            raise ValueError(f"segmentation ends at {t.n}, expected {self.n}")
        width = self.truth.k_star + 1
        cells = _cell_labels(block_labels(t), self.rows, self.cols)
        flat = np.bincount(cells * width + self.true_cells, minlength=(t.k + 1) * width)
        return IntersectionCounts(counts=flat.reshape(t.k + 1, width))

    def bn(self, counts: IntersectionCounts) -> float:
        n = self.n
        table = counts.counts.astype(np.float64)
        baseline = 2.0 / (n * (n + 1)) * float(table[0] @ self.mean_gaps[:, 0])

        blocks = table[1:]
        sizes = blocks.sum(axis=1)
        if np.any(sizes == 0):
            raise TheoryPreconditionError("a candidate block has no cell outside the G01 corner")
        spread = np.einsum("kl,lm,km->k", blocks, self.mean_gaps, blocks) / sizes
        return baseline + float(spread.sum()) / (n * (n + 1))


def intersection_counts(t: Segmentation, truth: GroundTruth, cfg: SegConfig, n: int) -> IntersectionCounts:
    return CountSweep(truth, cfg, n).counts(t)


def bn_term(t: Segmentation, truth: GroundTruth, cfg: SegConfig, n: int) -> float:
    """Deterministic part B(t), written with the intersection counts."""
    sweep = CountSweep(truth, cfg, n)
    return sweep.bn(sweep.counts(t))


def _require_clear_of_corner(t: Segmentation, derived: DerivedConstants, name: str) -> None:
    for a, b in t.blocks():
        if derived.block_meets_g01(a, b):
            raise TheoryPreconditionError(
                f"{name} block [{a}, {b}) reaches the G01 corner (n0={derived.n0})"
            )


def random_terms(
    t: Segmentation, matrix: ObservationMatrix, truth: GroundTruth, cfg: SegConfig
) -> TheoryDecomposition:
    """
    Compute B, V, W, Z and J for one observed matrix generated from truth.

    The noise is recovered cell-wise as Y - E[Y].
    """
    n = matrix.n
    if t.n != n:
        raise TheoryPreconditionError(f"segmentation ends at {t.n}, matrix side is {n}")
    if truth.omega != 0.0:
        raise TheoryPreconditionError("the decomposition assumes the corner mean equals mu0 (omega = 0)")
    derived = validate_config(cfg, n)
    t_star = truth.segmentation(n)
    _require_clear_of_corner(t, derived, "candidate")
    _require_clear_of_corner(t_star, derived, "true")

    n0 = derived.n0
    scale = 2.0 / (n * (n + 1))
    mu = mean_matrix(truth, n, n0)
    eps = matrix.values - mu

    upper = np.triu(np.ones((n, n), dtype=bool))
    corner = np.zeros((n, n), dtype=bool)
    corner[:n0, n - n0:] = True
    corner_sum = float(eps[corner].sum())
    corner_size = n0 * n0

    def block_terms(seg: Segmentation):
        covered = np.zeros((n, n), dtype=bool)
        noise_sums, sizes, mean_levels = [], [], []
        for a, b in seg.blocks():
            mask = np.zeros((n, n), dtype=bool)
            mask[a:b, a:b] = True
            mask &= upper
            covered |= mask
            noise_sums.append(float(eps[mask].sum()))
            sizes.append(int(mask.sum()))
            mean_levels.append(float(mu[mask].mean()))
        g00 = upper & ~covered & ~corner
        return np.array(noise_sums), np.array(sizes), np.array(mean_levels), g00

    s_hat, n_hat, nu_hat, g00 = block_terms(t)
    s_star, n_star, _, g00_star = block_terms(t_star)
    mu_star = np.array(truth.mu)

    g00_gap = float(eps[g00_star].sum()) - float(eps[g00].sum())

    vn = scale * (float(np.sum(s_star ** 2 / n_star)) - float(np.sum(s_hat ** 2 / n_hat)))
    vn += scale * (corner_sum / corner_size) ** 2 * (int(g00.sum()) - int(g00_star.sum()))

    wn = 2.0 * scale * (float(np.sum(s_star * mu_star)) - float(np.sum(s_hat * nu_hat)))
    wn += 2.0 * scale * truth.mu0 * g00_gap

    zn = 2.0 * scale * (corner_sum / corner_size) * (g00_gap - float((mu[g00] - truth.mu0).sum()))

    bn = bn_term(t, truth, cfg, n)
    jn = scale * (criterion_value(matrix, cfg, t) - criterion_value(matrix, cfg, t_star))

    return TheoryDecomposition(
        bn=bn,
        vn=vn,
        wn=wn,
        zn=zn,
        jn=jn,
        lambda_inf=truth.lambda_inf,
        lambda_bar=truth.lambda_bar,
        delta_tau=truth.delta_tau,
    )


def random_clear_segmentation(derived: DerivedConstants, rng: np.random.Generator) -> Segmentation:
    """Uniform admissible segmentation whose blocks all stay clear of G01, with K drawn uniformly."""
    n = derived.n
    # a block of length <= n - 2*n0 + 1 cannot reach the corner
    hi = min(derived.l_max, n - 2 * derived.n0 + 1)
    ks = [k for k in derived.feasible_ks() if count_admissible(n, k, derived.l_min, hi) > 0]
    if not ks:
        raise TheoryPreconditionError(f"no segmentation clear of the G01 corner for n={n}")
    k = ks[int(rng.integers(len(ks)))]
    return sample_admissible(n, k, derived.l_min, hi, rng)


def decomposition_suite(
    truth: GroundTruth, cfg: SegConfig, n: int, pairs: int, seed: int
) -> dict:
    """Check J = B + V + W + Z on `pairs` random (segmentation, seed) draws; report the worst residual."""
    derived = validate_config(cfg, n)
    worst = 0.0
    for index in range(pairs):
        rng = np.random.default_rng(seed + index)
        matrix, _ = generate(SimSpec(n=n, truth=truth, seed=seed + index), cfg)
        t = random_clear_segmentation(derived, rng)
        terms = random_terms(t, matrix, truth, cfg)
        worst = max(worst, terms.relative_residual)
    logger.info(f"Decomposition identity on {pairs} draws at n={n}: worst relative residual {worst:.3e}")
    return {"pairs": pairs, "n": n, "max_relative_residual": worst, "holds": worst <= 1e-8}
