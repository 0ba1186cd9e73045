"""Domain types shared by every module.

Index convention, used everywhere: boundaries are 0-based and blocks are
half-open, so block k covers rows/columns ``[b[k-1], b[k])`` and its
diagonal block is ``{(i, j): b[k-1] <= i <= j < b[k]}``. The 1-based
boundaries of the model write-up are ``t_k = b_k + 1``.
"""
import math
from typing import Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import config
from exceptions import ConfigurationError

MIN_SIDE = 8
SYMMETRY_TOL = 1e-9
# Guard for real * n products that should land on an integer (0.7 * 10 etc.).
EPS = 1e-9


class DerivedConstants(BaseModel):
    """Integer constants a SegConfig implies for one matrix size."""

    model_config = ConfigDict(frozen=True)

    n: int
    l_min: int
    l_max: int
    n0: int
    k_lo: int
    k_hi: int
    k_max: int

    def feasible(self, k: int) -> bool:
        return 1 <= k <= self.k_max and self.k_lo <= k <= self.k_hi

    def feasible_ks(self) -> List[int]:
        return [k for k in range(1, self.k_max + 1) if self.feasible(k)]

    def block_meets_g01(self, a: int, b: int) -> bool:
        # G01 = {i < n0, j >= n - n0}
        return a < self.n0 and b > self.n - self.n0


class SegConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float = Field(default_factory=lambda: config.DEFAULT_C)
    min_len: int = Field(default_factory=lambda: config.DEFAULT_MIN_LEN, ge=1)
    k_max: int = Field(default_factory=lambda: config.DEFAULT_K_MAX, ge=1)
    symmetrize: bool = False

    @field_validator("c")
    @classmethod
    def c_in_range(cls, value: float) -> float:
        if not (0.5 <= value < 1.0):
            raise ValueError(f"c must lie in [1/2, 1), got {value}")
        return value

    def derive(self, n: int) -> DerivedConstants:
        return validate_config(self, n)


def validate_config(cfg: SegConfig, n: int) -> DerivedConstants:
    """Derive l_max, n0 and the feasible K range; raise when nothing is admissible."""
    l_max = math.ceil(cfg.c * n - EPS) - 1
    n0 = math.floor((1.0 - cfg.c) * n + EPS)
    if n0 < 1:
        raise ConfigurationError(
            f"n0 = floor((1-c)n) = {n0} for n={n}, c={cfg.c}; the baseline corner is empty"
        )
    if cfg.min_len > l_max:
        raise ConfigurationError(
            f"min_len={cfg.min_len} exceeds the maximal block length {l_max} (n={n}, c={cfg.c})"
        )
    k_lo = -(-n // l_max)
    k_hi = n // cfg.min_len
    if k_lo > k_hi or k_lo > cfg.k_max:
        raise ConfigurationError(
            f"no feasible number of blocks: need {k_lo} <= K <= min({k_hi}, k_max={cfg.k_max})"
        )
    return DerivedConstants(
        n=n, l_min=cfg.min_len, l_max=l_max, n0=n0, k_lo=k_lo, k_hi=k_hi, k_max=cfg.k_max
    )


class ObservationMatrix(BaseModel):
    """Dense symmetric n x n observations; read-only once built."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def check_values(cls, value) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < MIN_SIDE:
            raise ValueError(f"matrix side n={arr.shape[0]} is below the minimum {MIN_SIDE}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix contains non-finite entries")
        gap = np.abs(arr - arr.T)
        if np.any(gap > SYMMETRY_TOL * np.maximum(1.0, np.abs(arr))):
            i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
            raise ValueError(f"matrix is not symmetric: Y[{i}][{j}]={arr[i, j]!r}, Y[{j}][{i}]={arr[j, i]!r}")
        arr.setflags(write=False)
        return arr

    @classmethod
    def from_array(cls, values, symmetrize: bool = False) -> "ObservationMatrix":
        arr = np.array(values, dtype=np.float64)
        if symmetrize and arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
            arr = (arr + arr.T) / 2.0
        return cls(values=arr)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])


class Segmentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    boundaries: Tuple[int, ...]

    @field_validator("boundaries")
    @classmethod
    def check_boundaries(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) < 2:
            raise ValueError("a segmentation needs at least the two endpoints")
        if value[0] != 0:
            raise ValueError(f"first boundary must be 0, got {value[0]}")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError(f"boundaries must be strictly increasing: {value}")
        return value

    @classmethod
    def of(cls, *boundaries: int) -> "Segmentation":
        return cls(boundaries=tuple(int(b) for b in boundaries))

    @property
    def n(self) -> int:
        return self.boundaries[-1]

    @property
    def k(self) -> int:
        return len(self.boundaries) - 1

    def blocks(self) -> Iterator[Tuple[int, int]]:
        return zip(self.boundaries[:-1], self.boundaries[1:])

    def lengths(self) -> List[int]:
        return [b - a for a, b in self.blocks()]

    def one_based(self) -> Tuple[int, ...]:
        return tuple(b + 1 for b in self.boundaries)

    def is_admissible(self, derived: DerivedConstants) -> bool:
        return self.n == derived.n and all(
            derived.l_min <= length <= derived.l_max for length in self.lengths()
        )


class GroundTruth(BaseModel):
    model_config = ConfigDict(frozen=True)

    tau: Tuple[float, ...]
    mu: Tuple[float, ...]
    mu0: float = 0.0
    sigma: float = Field(1.0, ge=0.0)
    omega: float = 0.0

    @model_validator(mode="after")
    def check_shape(self) -> "GroundTruth":
        tau = self.tau
        if len(tau) < 2 or tau[0] != 0.0 or tau[-1] != 1.0:
            raise ValueError("tau must start at 0 and end at 1")
        if any(b <= a for a, b in zip(tau, tau[1:])):
            raise ValueError(f"tau must be strictly increasing: {tau}")
        if len(self.mu) != len(tau) - 1:
            raise ValueError(f"mu has {len(self.mu)} entries, expected {len(tau) - 1}")
        return self

    @property
    def k_star(self) -> int:
        return len(self.mu)

    @property
    def gaps(self) -> List[float]:
        return [b - a for a, b in zip(self.tau, self.tau[1:])]

    @property
    def delta_tau(self) -> float:
        return min(self.gaps)

    @property
    def lambda_inf(self) -> float:
        return min(abs(m - self.mu0) for m in self.mu)

    @property
    def lambda_bar(self) -> float:
        means = (self.mu0,) + self.mu
        return max(abs(a - b) for a in means for b in means)

    @property
    def beta(self) -> float:
        # sub-Gaussian constant of N(0, sigma^2)
        return self.sigma ** 2 / 2.0

    @property
    def corner_mean(self) -> float:
        return self.mu0 + self.omega

    @property
    def lambda_inf_effective(self) -> float:
        return min(abs(m - self.corner_mean) for m in self.mu)

    def segmentation(self, n: int) -> Segmentation:
        return Segmentation(boundaries=tuple(math.floor(n * t + EPS) for t in self.tau))

    def check_admissible(self, cfg: SegConfig, n: int) -> Segmentation:
        """The true segmentation for this n; raises unless it is admissible under cfg."""
        derived = validate_config(cfg, n)
        if max(self.gaps) > cfg.c + EPS:
            raise ConfigurationError(
                f"largest true block fraction {max(self.gaps)} exceeds c={cfg.c}"
            )
        try:
            truth = self.segmentation(n)
        except ValueError as error:
            raise ConfigurationError(f"true boundaries collapse at n={n}: {error}") from error
        if not truth.is_admissible(derived):
            raise ConfigurationError(
                f"true segmentation {truth.boundaries} is not admissible for n={n} "
                f"(block lengths must lie in [{derived.l_min}, {derived.l_max}])"
            )
        return truth

    def require_identifiable(self) -> None:
        if self.lambda_inf <= 0.0:
            raise ConfigurationError(
                "every block mean must differ from the baseline mean (lambda_inf > 0)"
            )


class KRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    boundaries: Optional[Segmentation] = None
    criterion: Optional[float] = None

    @property
    def feasible(self) -> bool:
        return self.boundaries is not None


class SegmentationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    config: SegConfig
    per_k: List[KRecord]
    k_hat: int
    boundaries_hat: Segmentation
    m01: float
    block_means: Tuple[float, ...] = ()

    def record(self, k: int) -> KRecord:
        return self.per_k[k - 1]

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "config": self.config.model_dump(),
            "m01": self.m01,
            "per_k": [
                {
                    "k": rec.k,
                    "feasible": rec.feasible,
                    "boundaries": list(rec.boundaries.boundaries) if rec.feasible else None,
                    "t": list(rec.boundaries.one_based()) if rec.feasible else None,
                    "criterion": rec.criterion,
                }
                for rec in self.per_k
            ],
            "k_hat": self.k_hat,
            "boundaries_hat": list(self.boundaries_hat.boundaries),
            "t_hat": list(self.boundaries_hat.one_based()),
            "mu_hat": list(self.block_means),
        }
