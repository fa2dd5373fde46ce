import math
from typing import Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator
from scipy.special import logsumexp

from config.base import get_settings
from core.base import Base
from models.distribution import ProbDist

settings = get_settings()


class EngineSpec(Base):
    """One instance of the adversarial engine.

    ``prior`` is the referee's distribution P, ``bob`` the partition Q^B that
    Bob fixed, ``kt`` the thermal energy scale (JSON key ``kT``).
    """
    prior: ProbDist
    bob: ProbDist
    kt: float = Field(default=settings.DEFAULT_KT, gt=0, alias="kT")

    @field_validator("bob")
    @classmethod
    def validate_bob(cls, bob: ProbDist) -> ProbDist:
        if not bob.has_full_support():
            raise ValueError("Bob's partition must satisfy 0 < Q^B(x) < 1 on every outcome")

        return bob

    @model_validator(mode="after")
    def validate_alphabets(self) -> "EngineSpec":
        if self.prior.alphabet_size != self.bob.alphabet_size:
            raise ValueError(
                f"prior and bob disagree on the alphabet: {self.prior.alphabet_size} != {self.bob.alphabet_size}")

        return self

    @property
    def alphabet_size(self) -> int:
        return self.prior.alphabet_size

    def with_kt(self, kt: float) -> "EngineSpec":
        return EngineSpec(prior=self.prior, bob=self.bob, kT=kt)


class EnergyLevels(Base):
    """Energy levels E(x) (energy units) at temperature kT.

    The induced Gibbs distribution is exp(−E/kT)/Z. ``levels_from_dist``
    builds them in the gauge Z = 1; ``shifted`` moves to any other gauge.
    """
    energies: Tuple[float, ...]
    kt: float = Field(default=settings.DEFAULT_KT, gt=0, alias="kT")

    @field_validator("energies")
    @classmethod
    def validate_energies(cls, energies: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(energies) < 2:
            raise ValueError("At least two energy levels are required")
        if any(not math.isfinite(e) for e in energies):
            raise ValueError("Energy levels must be finite")

        return energies

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.energies, dtype=float)

    @property
    def log_partition_fn(self) -> float:
        return float(logsumexp(-self.array / self.kt))

    @property
    def partition_fn(self) -> float:
        return math.exp(self.log_partition_fn)

    def distribution(self) -> ProbDist:
        log_weights = -self.array / self.kt - self.log_partition_fn
        weights = np.exp(log_weights)
        return ProbDist.of(weights / weights.sum())

    def shifted(self, offset: float) -> "EnergyLevels":
        return EnergyLevels(energies=tuple(e + offset for e in self.energies), kT=self.kt)
