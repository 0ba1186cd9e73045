import pytest

from evaluation.lemma_check import lemma1_check, lower_bound
from exceptions import ConfigurationError
from pydantic_models.core_model import GroundTruth, SegConfig
from pydantic_models.evaluation_model import LemmaMode


@pytest.fixture()
def lemma_cfg():
    return SegConfig(c=0.75, min_len=2, k_max=20)


def test_bound_constants(thirds_truth):
    dtau = 1 / 3
    assert lower_bound(thirds_truth, LemmaMode.under, 30, 2, 0.0) == pytest.approx(dtau ** 4 / 64)
    assert lower_bound(thirds_truth, LemmaMode.over, 30, 2, 0.0) == pytest.approx((2 / 30) ** 2 / 4)
    assert lower_bound(thirds_truth, LemmaMode.equal_far, 30, 2, 0.05) == pytest.approx(0.05 * dtau ** 3 / 32)
    assert lower_bound(thirds_truth, LemmaMode.equal_far, 30, 2, 0.5) == pytest.approx(dtau / 2 * dtau ** 3 / 32)


def test_fewer_blocks_than_the_truth(thirds_truth, lemma_cfg):
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.under)
    assert report.k_values == [2]
    assert report.exhaustive
    assert report.candidates_checked == 15
    assert report.holds and report.margin > 0.0
    assert report.to_report()["status"] == "ok"


def test_equal_number_of_blocks_far_from_the_truth(thirds_truth, lemma_cfg):
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.equal_far)
    assert report.delta == pytest.approx(1 / 12)
    assert report.k_values == [3]
    assert report.has_candidates
    assert report.holds and report.margin > 0.0


def test_more_blocks_than_the_truth_on_a_slice(thirds_truth, lemma_cfg):
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.over, k_values=[4, 5])
    assert report.k_values == [4, 5]
    assert report.exhaustive
    assert report.holds and report.margin > 0.0


@pytest.mark.slow
def test_more_blocks_than_the_truth_exhaustively(thirds_truth, lemma_cfg):
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.over)
    assert report.k_values == list(range(4, 16))
    assert report.exhaustive
    assert report.holds and report.margin > 0.0


def test_far_class_can_be_empty(thirds_truth, lemma_cfg):
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.equal_far, delta=0.9)
    assert not report.has_candidates
    assert report.holds
    assert report.min_bn is None
    assert report.to_report()["status"] == "no_candidates"


def test_large_classes_are_sampled(mocker, thirds_truth, lemma_cfg):
    mocker.patch("evaluation.lemma_check.ENUMERATION_LIMIT", 5)
    report = lemma1_check(thirds_truth, lemma_cfg, 30, LemmaMode.under, sample_budget=50, seed=3)
    assert not report.exhaustive
    assert report.candidates_checked == 50
    assert report.holds


def test_identical_means_are_refused(lemma_cfg):
    truth = GroundTruth(tau=(0.0, 1 / 3, 2 / 3, 1.0), mu=(0.0, 0.0, 0.0), mu0=0.0)
    with pytest.raises(ConfigurationError):
        lemma1_check(truth, lemma_cfg, 30, LemmaMode.under)
