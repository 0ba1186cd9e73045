from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from pydantic_models.core_model import GroundTruth


class NoiseKind(str, Enum):
    gaussian = "gaussian"


class SimSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=8)
    truth: GroundTruth
    seed: int = Field(ge=0, lt=2 ** 64)
    noise: NoiseKind = NoiseKind.gaussian

    def for_replicate(self, index: int) -> "SimSpec":
        """Replicate seeds are seed + index (wrapped to 64 bits)."""
        return self.model_copy(update={"seed": (self.seed + index) % 2 ** 64})
