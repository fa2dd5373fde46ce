import math
from typing import Tuple

import numpy as np
from pydantic import field_validator, model_validator

from config.base import get_settings
from core.base import Base
from models.distribution import ProbDist

settings = get_settings()


class BettingSpec(Base):
    """A horse race: outcome prior P, Bob's odds o_x and Alice's bet fractions f_x.

    Q^B(x) = 1/o_x need not be normalized; its total is the ``overround``.
    """
    prior: ProbDist
    odds: Tuple[float, ...]
    fractions: ProbDist

    @field_validator("odds")
    @classmethod
    def validate_odds(cls, odds: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(not math.isfinite(o) or o <= 0 for o in odds):
            raise ValueError("Odds must be positive and finite")

        return odds

    @field_validator("fractions")
    @classmethod
    def validate_fractions(cls, fractions: ProbDist) -> ProbDist:
        if not fractions.has_full_support():
            raise ValueError("Alice always bets a non-zero fraction on every outcome")

        return fractions

    @model_validator(mode="after")
    def validate_alphabets(self) -> "BettingSpec":
        if not len(self.prior) == len(self.odds) == len(self.fractions):
            raise ValueError("prior, odds and fractions must cover the same outcomes")

        return self

    @property
    def odds_array(self) -> np.ndarray:
        return np.asarray(self.odds, dtype=float)

    @property
    def overround(self) -> float:
        """Σ 1/o_x; exactly 1 for fair odds"""
        return math.fsum(1.0 / o for o in self.odds)

    @property
    def is_fair(self) -> bool:
        return abs(self.overround - 1.0) <= settings.SIMPLEX_TOLERANCE

    def implied_distribution(self) -> ProbDist:
        """Q^B = 1/o as a distribution; only meaningful for fair odds"""
        return ProbDist.of(1.0 / self.odds_array)
