from typing import Optional

from pydantic import Field, field_validator, model_validator

from config.base import get_settings
from core.base import Base
from models.distribution import ProbDist
from models.engine import EngineSpec
from models.sequence import SequenceType

settings = get_settings()


class SimConfig(Base):
    """Inputs of one Monte Carlo run; identical configs give identical samples.

    ``strategy`` defaults to the optimal tilted strategy of the requested risk
    profile. ``target_type`` may be given as a bare list of counts.
    """
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    rounds: int = Field(gt=0)
    trials: int = Field(gt=0)
    spec: EngineSpec
    strategy: Optional[ProbDist] = None
    target_type: Optional[SequenceType] = None

    @field_validator("target_type", mode="before")
    @classmethod
    def coerce_target(cls, value):
        if isinstance(value, (list, tuple)):
            return {"counts": tuple(value), "n": sum(value)}

        return value

    @model_validator(mode="after")
    def validate_alphabets(self) -> "SimConfig":
        size = self.spec.alphabet_size
        if self.strategy is not None and self.strategy.alphabet_size != size:
            raise ValueError(f"strategy covers {self.strategy.alphabet_size} outcomes, engine {size}")
        if self.target_type is not None:
            if self.target_type.alphabet_size != size:
                raise ValueError(f"target_type covers {self.target_type.alphabet_size} outcomes, engine {size}")
            if self.target_type.n != self.rounds:
                raise ValueError(f"target_type has length {self.target_type.n}, rounds is {self.rounds}")

        return self
