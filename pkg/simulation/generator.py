import logging
from typing import Optional, Tuple

import numpy as np

from pydantic_models.core_model import GroundTruth, ObservationMatrix, SegConfig, Segmentation, validate_config
from pydantic_models.simulation_model import NoiseKind, SimSpec
from simulation.rng import Xoshiro256PlusPlus

logger = logging.getLogger(__name__)


def mean_matrix(truth: GroundTruth, n: int, n0: int) -> np.ndarray:
    """
    Block-diagonal mean: mu_k on each true diagonal block, mu0 elsewhere.
    With omega != 0 the baseline cells of the n0 x n0 top-right corner (and
    their mirror) sit at mu0 + omega instead.
    """
    t = truth.segmentation(n)
    values = np.full((n, n), truth.mu0, dtype=np.float64)
    in_block = np.zeros((n, n), dtype=bool)
    for (a, b), mean in zip(t.blocks(), truth.mu):
        values[a:b, a:b] = mean
        in_block[a:b, a:b] = True
    if truth.omega != 0.0:
        corner = np.zeros((n, n), dtype=bool)
        corner[:n0, n - n0:] = True
        corner |= corner.T
        values[corner & ~in_block] = truth.mu0 + truth.omega
    return values


def upper_noise(spec: SimSpec) -> np.ndarray:
    """Symmetric noise matrix: drawn for i <= j in row-major order, then mirrored."""
    n = spec.n
    noise = np.zeros((n, n), dtype=np.float64)
    if spec.truth.sigma == 0.0:
        return noise
    if spec.noise is not NoiseKind.gaussian:
        raise ValueError(f"unsupported noise kind {spec.noise}")
    rows, cols = np.triu_indices(n)
    draws = Xoshiro256PlusPlus(spec.seed).normals(rows.size) * spec.truth.sigma
    noise[rows, cols] = draws
    noise[cols, rows] = draws
    return noise


def generate(spec: SimSpec, cfg: Optional[SegConfig] = None) -> Tuple[ObservationMatrix, Segmentation]:
    """Simulate one observation matrix; the same spec always gives the same matrix."""
    cfg = cfg or SegConfig()
    truth_boundaries = spec.truth.check_admissible(cfg, spec.n)
    n0 = validate_config(cfg, spec.n).n0

    values = mean_matrix(spec.truth, spec.n, n0) + upper_noise(spec)
    logger.debug(f"Simulated n={spec.n}, sigma={spec.truth.sigma}, omega={spec.truth.omega}, seed={spec.seed}")
    return ObservationMatrix(values=values), truth_boundaries


def empirical_noise_moments(
    spec: SimSpec, replicates: int, cfg: Optional[SegConfig] = None
) -> Tuple[float, float]:
    """Sample mean and variance of the simulated noise over the upper triangle, pooled over replicates."""
    cfg = cfg or SegConfig()
    n0 = validate_config(cfg, spec.n).n0
    mean = mean_matrix(spec.truth, spec.n, n0)
    rows, cols = np.triu_indices(spec.n)
    pooled = []
    for index in range(replicates):
        matrix, _ = generate(spec.for_replicate(index), cfg)
        pooled.append((matrix.values - mean)[rows, cols])
    noise = np.concatenate(pooled)
    return float(noise.mean()), float(noise.var())
