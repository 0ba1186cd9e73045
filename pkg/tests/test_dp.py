import json

import numpy as np
import pytest

from pydantic_models.core_model import ObservationMatrix, SegConfig
from segmentation.brute_force import brute_force_segment
from segmentation.dp import fill_table, fitted_matrix, segment_for_k, select_k
from segmentation.prefix_stats import build_stats
from tests.helpers import block_matrix, random_symmetric


@pytest.mark.parametrize("n", [10, 12, 14])
def test_dynamic_program_matches_exhaustive_search(n):
    cfg = SegConfig(c=0.75, min_len=2, k_max=4)
    rng = np.random.default_rng(1000 + n)
    for _ in range(50):
        matrix = random_symmetric(rng, n)
        stats = build_stats(matrix, cfg)
        for k in (2, 3, 4):
            fast = segment_for_k(stats, cfg, k)
            slow = brute_force_segment(matrix, cfg, k)
            assert fast.boundaries == slow.boundaries
            assert fast.criterion == pytest.approx(slow.criterion, rel=1e-9)


def test_noiseless_three_blocks_are_recovered():
    cfg = SegConfig(c=0.75, min_len=2, k_max=6)
    matrix = block_matrix((0, 5, 12, 20), (1.0, 1.0, 1.0))
    record = segment_for_k(build_stats(matrix, cfg), cfg, 3)
    assert record.boundaries.boundaries == (0, 5, 12, 20)
    assert record.criterion == pytest.approx(0.0, abs=1e-9)


def test_ties_go_to_the_smallest_boundary():
    cfg = SegConfig(c=0.75, min_len=2, k_max=2)
    matrix = ObservationMatrix(values=np.full((8, 8), 2.0))
    record = segment_for_k(build_stats(matrix, cfg), cfg, 2)
    assert record.boundaries.boundaries == (0, 3, 8)
    assert brute_force_segment(matrix, cfg, 2).boundaries.boundaries == (0, 3, 8)


def test_three_block_ties_take_the_smallest_last_boundary_first():
    cfg = SegConfig(c=0.5, min_len=2, k_max=3)
    matrix = ObservationMatrix(values=np.full((12, 12), 2.0))
    record = segment_for_k(build_stats(matrix, cfg), cfg, 3)
    assert record.boundaries.boundaries == (0, 2, 7, 12)
    assert brute_force_segment(matrix, cfg, 3).boundaries.boundaries == (0, 2, 7, 12)


def test_infeasible_k_is_a_marker_not_an_error():
    cfg = SegConfig(c=0.75, min_len=2, k_max=20)
    matrix = ObservationMatrix(values=np.zeros((16, 16)))
    record = segment_for_k(build_stats(matrix, cfg), cfg, 1)
    assert not record.feasible
    assert record.criterion is None


@pytest.mark.parametrize("k", [0, 21])
def test_k_outside_the_sweep_is_rejected(k):
    cfg = SegConfig(c=0.75, min_len=2, k_max=20)
    stats = build_stats(ObservationMatrix(values=np.zeros((16, 16))), cfg)
    with pytest.raises(ValueError):
        segment_for_k(stats, cfg, k)


def test_table_rows_respect_length_bounds(rng):
    cfg = SegConfig(c=0.75, min_len=3, k_max=6)
    stats = build_stats(random_symmetric(rng, 24), cfg)
    derived = cfg.derive(24)
    table = fill_table(stats, derived, cfg.k_max)
    assert table.cost[0, 0] == 0.0
    assert np.all(np.isinf(table.cost[0, 1:]))
    for k in range(1, cfg.k_max + 1):
        for j in np.flatnonzero(np.isfinite(table.cost[k])):
            assert k * derived.l_min <= j <= k * derived.l_max
    for k in derived.feasible_ks():
        if k <= cfg.k_max:
            assert table.backtrack(k).is_admissible(derived)


def test_select_k_recovers_noiseless_five_block_geometry(noiseless_five_blocks, five_block_truth, cfg):
    matrix = noiseless_five_blocks(100)
    result = select_k(build_stats(matrix, cfg), cfg)
    assert result.k_hat == 5
    assert result.boundaries_hat == five_block_truth.segmentation(100)
    assert result.boundaries_hat.boundaries == (0, 7, 20, 40, 67, 100)
    assert result.record(5).criterion == pytest.approx(0.0, abs=1e-9)
    assert result.block_means == pytest.approx((1.0,) * 5)
    assert np.allclose(fitted_matrix(result).values, matrix.values)


def test_constant_matrix_selects_the_smallest_feasible_k(cfg):
    matrix = ObservationMatrix(values=np.full((16, 16), -0.5))
    result = select_k(build_stats(matrix, cfg), cfg)
    assert result.k_hat == 2
    assert len(result.per_k) == cfg.k_max
    assert not result.record(1).feasible
    assert not result.record(9).feasible
    assert all(rec.criterion == pytest.approx(0.0, abs=1e-12) for rec in result.per_k if rec.feasible)


def test_selected_k_matches_exhaustive_minimum(rng):
    cfg = SegConfig(c=0.75, min_len=2, k_max=4)
    for _ in range(5):
        matrix = random_symmetric(rng, 12)
        result = select_k(build_stats(matrix, cfg), cfg)
        criteria = {k: brute_force_segment(matrix, cfg, k).criterion for k in (2, 3, 4)}
        best = min(criteria.values())
        assert result.k_hat == min(k for k, v in criteria.items() if v == pytest.approx(best, rel=1e-12))
        assert result.boundaries_hat == result.record(result.k_hat).boundaries


def test_report_is_deterministic_and_json_round_trips(rng, cfg):
    matrix = random_symmetric(rng, 30)
    first = select_k(build_stats(matrix, cfg), cfg).to_report()
    second = select_k(build_stats(matrix, cfg), cfg).to_report()
    assert json.dumps(first) == json.dumps(second)
    assert json.loads(json.dumps(first)) == first
    feasible = [entry for entry in first["per_k"] if entry["feasible"]]
    assert all(entry["t"] == [b + 1 for b in entry["boundaries"]] for entry in feasible)
    assert first["t_hat"] == [b + 1 for b in first["boundaries_hat"]]
