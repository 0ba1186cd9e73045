"""Numerical check of the lower bounds on the deterministic part B.

Three classes of candidate segmentations are examined:

* ``under``: fewer blocks than the truth, block lengths in [1, l_max];
  bound lambda_inf^2 * dtau^4 / 64.
* ``over``: more blocks than the truth, lengths in [min_len, l_max];
  bound lambda_inf^2 * (min_len / n)^2 / 4.
* ``equal_far``: as many blocks as the truth, lengths in [1, l_max], some
  boundary more than n*delta away from its true counterpart;
  bound lambda_inf^2 * min(dtau / 2, delta) * dtau^3 / 32.
"""
import logging
from typing import Iterator, List, Optional

import numpy as np

from pydantic_models.core_model import GroundTruth, SegConfig, Segmentation, validate_config
from pydantic_models.evaluation_model import Lemma1Report, LemmaMode
from evaluation.theory import CountSweep
from segmentation.admissible import count_admissible, enumerate_admissible, sample_admissible

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10 ** 6


def lower_bound(truth: GroundTruth, mode: LemmaMode, n: int, min_len: int, delta: float) -> float:
    lam2 = truth.lambda_inf ** 2
    dtau = truth.delta_tau
    if mode is LemmaMode.under:
        return lam2 * dtau ** 4 / 64.0
    if mode is LemmaMode.over:
        return lam2 * (min_len / n) ** 2 / 4.0
    return lam2 * min(dtau / 2.0, delta) * dtau ** 3 / 32.0


def _candidates(
    n: int, k: int, lo: int, hi: int, sample_budget: int, rng: np.random.Generator
) -> Iterator[Segmentation]:
    total = count_admissible(n, k, lo, hi)
    if total <= ENUMERATION_LIMIT:
        yield from enumerate_admissible(n, k, lo, hi)
    else:
        for _ in range(sample_budget):
            yield sample_admissible(n, k, lo, hi, rng)


def lemma1_check(
    truth: GroundTruth,
    cfg: SegConfig,
    n: int,
    mode: LemmaMode,
    sample_budget: int = ENUMERATION_LIMIT,
    delta: Optional[float] = None,
    k_values: Optional[List[int]] = None,
    seed: int = 0,
) -> Lemma1Report:
    """
    Evaluate B on every candidate of the requested class (or on
    ``sample_budget`` uniform draws per K when a class holds more than 10**6
    segmentations) and compare the smallest value with the bound.
    """
    truth.require_identifiable()
    mode = LemmaMode(mode)
    derived = validate_config(cfg, n)
    t_star = truth.segmentation(n)
    k_star = truth.k_star
    delta = truth.delta_tau / 4.0 if delta is None else delta

    if mode is LemmaMode.over:
        lo = cfg.min_len
        default_ks = range(k_star + 1, min(cfg.k_max, n // lo) + 1)
    elif mode is LemmaMode.under:
        lo = 1
        default_ks = range(1, k_star)
    else:
        lo = 1
        default_ks = [k_star]
    hi = derived.l_max
    ks = [k for k in (k_values or default_ks) if count_admissible(n, k, lo, hi) > 0]

    bound = lower_bound(truth, mode, n, cfg.min_len, delta)
    sweep = CountSweep(truth, cfg, n)
    rng = np.random.default_rng(seed)
    true_boundaries = np.array(t_star.boundaries)

    checked = 0
    exhaustive = True
    min_bn, worst = None, None
    for k in ks:
        exhaustive &= count_admissible(n, k, lo, hi) <= ENUMERATION_LIMIT
        for t in _candidates(n, k, lo, hi, sample_budget, rng):
            if mode is LemmaMode.equal_far and np.max(np.abs(np.array(t.boundaries) - true_boundaries)) <= n * delta:
                continue
            value = sweep.bn(sweep.counts(t))
            checked += 1
            if min_bn is None or value < min_bn:
                min_bn, worst = value, t.boundaries

    report = Lemma1Report(
        mode=mode,
        n=n,
        bound=bound,
        min_bn=min_bn,
        margin=None if min_bn is None else min_bn - bound,
        candidates_checked=checked,
        k_values=ks,
        exhaustive=exhaustive,
        delta=delta if mode is LemmaMode.equal_far else None,
        worst_boundaries=worst,
    )
    if report.has_candidates:
        logger.info(
            f"Lemma check ({mode.value}, n={n}): {checked} candidates, "
            f"min B={min_bn:.4g}, bound={bound:.4g}, margin={report.margin:.4g}"
        )
    else:
        logger.info(f"Lemma check ({mode.value}, n={n}): no candidates in this class")
    return report
