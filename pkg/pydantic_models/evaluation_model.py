from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict


class HausdorffPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    h1: int
    h2: int

    @property
    def full(self) -> int:
        return max(self.h1, self.h2)

    def as_fractions(self, n: int) -> Tuple[float, float]:
        """h1 and h2 on the break-fraction scale."""
        return self.h1 / n, self.h2 / n


class IntersectionCounts(BaseModel):
    """counts[k][l] = |D_k ∩ D*_l|; row 0 is G00 of the candidate, column 0 is G00 of the truth."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    counts: np.ndarray

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


class TheoryDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    bn: float
    vn: float
    wn: float
    zn: float
    jn: float
    lambda_inf: float
    lambda_bar: float
    delta_tau: float

    @property
    def residual(self) -> float:
        return abs(self.bn + self.vn + self.wn + self.zn - self.jn)

    @property
    def relative_residual(self) -> float:
        return self.residual / max(1.0, abs(self.jn))


class LemmaMode(str, Enum):
    under = "under"
    over = "over"
    equal_far = "equal_far"


class Lemma1Report(BaseModel):
    mode: LemmaMode
    n: int
    bound: float
    min_bn: Optional[float] = None
    margin: Optional[float] = None
    candidates_checked: int = 0
    k_values: List[int] = []
    exhaustive: bool = True
    delta: Optional[float] = None
    worst_boundaries: Optional[Tuple[int, ...]] = None

    @property
    def has_candidates(self) -> bool:
        return self.candidates_checked > 0

    @property
    def holds(self) -> bool:
        return not self.has_candidates or self.margin > 0.0

    def to_report(self) -> dict:
        report = self.model_dump(mode="json")
        report["status"] = "no_candidates" if not self.has_candidates else ("ok" if self.holds else "violated")
        return report
