import os

os.environ["ENV_STATE"] = "test"

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from pydantic_models.core_model import GroundTruth, ObservationMatrix, SegConfig  # noqa: E402
from simulation.generator import mean_matrix  # noqa: E402
from tests.helpers import FIVE_BLOCK_TAU  # noqa: E402


@pytest.fixture()
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture()
def cfg():
    return SegConfig(c=0.75, min_len=2, k_max=20)


@pytest.fixture()
def five_block_truth():
    return GroundTruth(tau=FIVE_BLOCK_TAU, mu=(1.0,) * 5, mu0=0.0, sigma=1.0)


@pytest.fixture()
def thirds_truth():
    return GroundTruth(tau=(0.0, 1 / 3, 2 / 3, 1.0), mu=(1.0, 1.0, 1.0), mu0=0.0, sigma=1.0)


@pytest.fixture()
def noiseless_five_blocks(five_block_truth, cfg):
    """Builder for the noiseless mean matrix of the five-block truth at a given n."""

    def build(n: int) -> ObservationMatrix:
        truth = five_block_truth.model_copy(update={"sigma": 0.0})
        return ObservationMatrix(values=mean_matrix(truth, n, cfg.derive(n).n0))

    return build


@pytest.fixture()
def out_dir(tmp_path):
    path = tmp_path / "out"
    path.mkdir()
    return path
