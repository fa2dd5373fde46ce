from fractions import Fraction
from typing import Iterable, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from core.base import Base
from models.distribution import ProbDist


class SequenceType(Base):
    """Type (empirical distribution) of a length-n outcome sequence"""
    counts: Tuple[int, ...]
    n: int = Field(gt=0)

    @field_validator("counts")
    @classmethod
    def validate_counts(cls, counts: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(counts) < 2:
            raise ValueError("A type needs an alphabet of at least two outcomes")
        if any(c < 0 for c in counts):
            raise ValueError("Counts must be non-negative")

        return counts

    @model_validator(mode="after")
    def validate_total(self) -> "SequenceType":
        if sum(self.counts) != self.n:
            raise ValueError(f"Counts sum to {sum(self.counts)}, not n={self.n}")

        return self

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "SequenceType":
        counts = tuple(int(c) for c in counts)
        return cls(counts=counts, n=sum(counts))

    @classmethod
    def from_sequence(cls, outcomes: Iterable[int], alphabet_size: int) -> "SequenceType":
        counts = np.bincount(np.asarray(list(outcomes), dtype=int), minlength=alphabet_size)
        return cls.from_counts(counts.tolist())

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    @property
    def frequencies(self) -> Tuple[Fraction, ...]:
        """λ(x) = N(x)/n as exact rationals"""
        return tuple(Fraction(c, self.n) for c in self.counts)

    @property
    def lambda_(self) -> ProbDist:
        return ProbDist.of(np.asarray(self.counts, dtype=float) / self.n)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)


class RiskBudget(Base):
    """Success-probability threshold ε and the tilt μ it selects"""
    epsilon: float = Field(gt=0, le=1)
    mu: float = Field(ge=0, le=1)


class TradeoffPoint(Base):
    """One record on the risk-reward frontier.

    For the analytic path ``work_bound`` is the right-hand side of the
    finite-n work bound and ``matched_type`` the lattice type nearest to the
    tilted strategy; for the exhaustive oracle ``strategy`` is the selected
    type itself and ``work_bound`` the work realized when it occurs.
    """
    n: int
    budget: RiskBudget
    strategy: ProbDist
    work_bound: float
    constraint_value: float
    success_probability: Optional[float] = None
    matched_type: Optional[SequenceType] = None
