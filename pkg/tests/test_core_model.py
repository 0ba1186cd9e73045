import numpy as np
import pytest
from pydantic import ValidationError

from exceptions import ConfigurationError
from pydantic_models.core_model import (
    GroundTruth,
    ObservationMatrix,
    SegConfig,
    Segmentation,
    validate_config,
)


def test_derived_constants_at_n500():
    derived = validate_config(SegConfig(c=0.75, min_len=2, k_max=300), 500)
    assert (derived.l_max, derived.n0) == (374, 125)
    assert (derived.k_lo, derived.k_hi) == (2, 250)
    assert derived.feasible(2) and derived.feasible(250)
    assert not derived.feasible(1)
    assert not derived.feasible(251)


def test_derived_constants_at_n16():
    derived = validate_config(SegConfig(c=0.75, min_len=2, k_max=20), 16)
    assert (derived.l_max, derived.n0) == (11, 4)
    assert derived.feasible_ks() == list(range(2, 9))


def test_decimal_c_maps_to_exact_integers():
    derived = validate_config(SegConfig(c=0.7, min_len=2, k_max=5), 10)
    assert (derived.l_max, derived.n0) == (6, 3)


def test_c_below_one_half_is_rejected():
    with pytest.raises(ValidationError, match=r"c must lie in \[1/2, 1\)"):
        SegConfig(c=0.4)


def test_c_equal_to_one_is_rejected():
    with pytest.raises(ValidationError):
        SegConfig(c=1.0)


def test_empty_corner_is_rejected():
    with pytest.raises(ConfigurationError, match="n0"):
        validate_config(SegConfig(c=0.95, min_len=1, k_max=20), 8)


def test_min_len_above_l_max_is_rejected():
    with pytest.raises(ConfigurationError, match="min_len"):
        validate_config(SegConfig(c=0.75, min_len=6, k_max=20), 8)


def test_k_max_below_smallest_feasible_k_is_rejected():
    with pytest.raises(ConfigurationError, match="no feasible number of blocks"):
        validate_config(SegConfig(c=0.75, min_len=2, k_max=1), 16)


@pytest.mark.parametrize("n", [8, 16, 99, 500])
def test_single_block_is_never_feasible(n):
    assert not validate_config(SegConfig(c=0.75, min_len=2, k_max=20), n).feasible(1)


def test_block_meets_corner():
    derived = validate_config(SegConfig(c=0.75, min_len=2, k_max=20), 40)
    assert derived.block_meets_g01(2, 31)
    assert not derived.block_meets_g01(0, 30)
    assert not derived.block_meets_g01(10, 40)


def test_segmentation_shape():
    t = Segmentation.of(0, 3, 8)
    assert (t.n, t.k) == (8, 2)
    assert list(t.blocks()) == [(0, 3), (3, 8)]
    assert t.lengths() == [3, 5]
    assert t.one_based() == (1, 4, 9)


@pytest.mark.parametrize("boundaries", [(0,), (1, 8), (0, 3, 3, 8), (0, 5, 4, 8)])
def test_malformed_segmentations_are_rejected(boundaries):
    with pytest.raises(ValidationError):
        Segmentation(boundaries=boundaries)


def test_admissibility_follows_length_bounds():
    derived = validate_config(SegConfig(c=0.75, min_len=2, k_max=20), 8)
    assert Segmentation.of(0, 3, 8).is_admissible(derived)
    assert not Segmentation.of(0, 1, 8).is_admissible(derived)
    assert not Segmentation.of(0, 2, 8).is_admissible(derived)


def test_true_boundaries_at_n500(five_block_truth):
    assert five_block_truth.segmentation(500).boundaries == (0, 35, 100, 200, 335, 500)


@pytest.mark.parametrize("n", [8, 37, 100, 1500])
def test_boundary_mapping_pins_endpoints(n):
    truth = GroundTruth(tau=(0.0, 0.29, 0.61, 1.0), mu=(1.0, 2.0, 3.0))
    boundaries = truth.segmentation(n).boundaries
    assert boundaries[0] == 0 and boundaries[-1] == n


def test_truth_summaries():
    truth = GroundTruth(tau=(0.0, 0.25, 0.5, 1.0), mu=(1.0, -2.0, 0.5), mu0=0.25, sigma=2.0, omega=0.5)
    assert truth.k_star == 3
    assert truth.delta_tau == pytest.approx(0.25)
    assert truth.lambda_inf == pytest.approx(0.25)
    assert truth.lambda_bar == pytest.approx(3.0)
    assert truth.beta == pytest.approx(2.0)
    assert truth.corner_mean == pytest.approx(0.75)
    assert truth.lambda_inf_effective == pytest.approx(0.25)


@pytest.mark.parametrize(
    "tau, mu",
    [((0.1, 1.0), (1.0,)), ((0.0, 0.9), (1.0,)), ((0.0, 0.5, 0.5, 1.0), (1.0, 1.0, 1.0)), ((0.0, 0.5, 1.0), (1.0,))],
)
def test_malformed_truths_are_rejected(tau, mu):
    with pytest.raises(ValidationError):
        GroundTruth(tau=tau, mu=mu)


def test_short_true_block_is_inadmissible(five_block_truth, cfg):
    # 0.07 * 20 = 1.4, so the first block has a single row
    with pytest.raises(ConfigurationError, match="not admissible"):
        five_block_truth.check_admissible(cfg, 20)


def test_oversized_true_block_is_inadmissible(cfg):
    truth = GroundTruth(tau=(0.0, 0.8, 1.0), mu=(1.0, 1.0))
    with pytest.raises(ConfigurationError):
        truth.check_admissible(cfg, 100)


def test_identifiability_requires_distinct_means():
    with pytest.raises(ConfigurationError, match="lambda_inf"):
        GroundTruth(tau=(0.0, 0.5, 1.0), mu=(0.0, 0.0), mu0=0.0).require_identifiable()


def test_observation_matrix_is_read_only(rng):
    values = rng.standard_normal((8, 8))
    matrix = ObservationMatrix(values=values + values.T)
    assert not matrix.values.flags.writeable
    assert matrix.n == 8


@pytest.mark.parametrize(
    "values, message",
    [
        (np.ones((8, 9)), "square"),
        (np.ones((4, 4)), "below the minimum"),
        (np.full((8, 8), np.nan), "non-finite"),
    ],
)
def test_invalid_matrices_are_rejected(values, message):
    with pytest.raises(ValidationError, match=message):
        ObservationMatrix(values=values)


def test_asymmetric_matrix_is_rejected_unless_symmetrized():
    values = np.zeros((8, 8))
    values[0, 1], values[1, 0] = 1.0, 2.0
    with pytest.raises(ValidationError, match="not symmetric"):
        ObservationMatrix(values=values)
    averaged = ObservationMatrix.from_array(values, symmetrize=True)
    assert averaged.values[0, 1] == averaged.values[1, 0] == 1.5
