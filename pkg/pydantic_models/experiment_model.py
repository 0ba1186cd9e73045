import json
import os
import tomllib
from itertools import product
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import config
from exceptions import ConfigurationError
from pydantic_models.core_model import GroundTruth, SegConfig


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_values: List[int] = Field(min_length=1)
    sigma_values: List[float] = Field(min_length=1)
    omega_values: List[float] = [0.0]
    replicates: int = Field(50, ge=1)
    base_seed: int = Field(0, ge=0, lt=2 ** 63)
    truth: GroundTruth
    seg: SegConfig = Field(default_factory=SegConfig)
    jobs: Optional[int] = Field(None, ge=1)
    record_runtime: bool = False

    @field_validator("n_values", "sigma_values", "omega_values")
    @classmethod
    def drop_repeated_values(cls, values: list) -> list:
        """Repeated grid values collapse to one."""
        return list(dict.fromkeys(values))

    @model_validator(mode="after")
    def truth_fits_every_size(self) -> "ExperimentConfig":
        for n in self.n_values:
            self.truth.check_admissible(self.seg, n)
        if any(s < 0 for s in self.sigma_values):
            raise ValueError("sigma values must be nonnegative")
        return self

    def cells(self) -> List[Tuple[int, float, float]]:
        return sorted(product(self.n_values, map(float, self.sigma_values), map(float, self.omega_values)))

    def seeds(self) -> range:
        return range(self.base_seed, self.base_seed + self.replicates)

    def resolved_jobs(self) -> int:
        """BLOCKSEG_JOBS wins over the file, which wins over the machine's CPU count."""
        return config.JOBS or self.jobs or os.cpu_count() or 1

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Read a TOML or JSON experiment file (chosen by extension)."""
        path = Path(path)
        suffix = path.suffix.lower()
        if suffix not in (".toml", ".json"):
            raise ConfigurationError(f"{path}: experiment files must be .toml or .json")
        raw = path.read_bytes()
        try:
            data = tomllib.loads(raw.decode("utf-8")) if suffix == ".toml" else json.loads(raw)
        except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as error:
            raise ConfigurationError(f"{path}: {error}") from error
        return cls.model_validate(data)


class ReplicateTask(BaseModel):
    """One simulated matrix of one grid cell; picklable so it can travel to a worker process."""

    model_config = ConfigDict(frozen=True)

    n: int
    sigma: float
    omega: float
    seed: int
    truth: GroundTruth
    seg: SegConfig
    record_runtime: bool = False

    @property
    def key(self) -> Tuple[int, float, float, int]:
        return self.n, self.sigma, self.omega, self.seed

    def cell_truth(self) -> GroundTruth:
        return self.truth.model_copy(update={"sigma": self.sigma, "omega": self.omega})


def build_tasks(experiment: ExperimentConfig) -> List[ReplicateTask]:
    """Every (cell, seed) task in (n, sigma, omega, seed) order."""
    return [
        ReplicateTask(
            n=n,
            sigma=sigma,
            omega=omega,
            seed=seed,
            truth=experiment.truth,
            seg=experiment.seg,
            record_runtime=experiment.record_runtime,
        )
        for n, sigma, omega in experiment.cells()
        for seed in experiment.seeds()
    ]
