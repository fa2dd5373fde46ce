import math
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from pydantic import ConfigDict, RootModel, field_validator, model_validator

from config.base import get_settings
from core.base import Base
from core.enums.renyi_order import SpecialOrder

settings = get_settings()


class ProbDist(RootModel[Tuple[float, ...]]):
    """A probability vector over a finite outcome alphabet.

    Serializes as a bare JSON array. Inputs within RENORMALIZE_TOLERANCE of
    summing to one are renormalized (float round-trips through JSON); worse
    inputs are rejected.
    """
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def coerce_sequence(cls, data):
        if isinstance(data, np.ndarray):
            return tuple(float(value) for value in data.ravel())
        if isinstance(data, (list, tuple)):
            return tuple(data)

        return data

    @field_validator("root")
    @classmethod
    def validate_weights(cls, weights: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(weights) < 2:
            raise ValueError("A distribution needs an alphabet of at least two outcomes")
        if any(not math.isfinite(w) for w in weights):
            raise ValueError("Weights must be finite")
        if any(w < 0 for w in weights):
            raise ValueError("Weights must be non-negative")

        total = math.fsum(weights)
        if abs(total - 1.0) > settings.RENORMALIZE_TOLERANCE:
            raise ValueError(f"Weights sum to {total!r}, not 1")
        if abs(total - 1.0) > settings.SIMPLEX_TOLERANCE:
            weights = tuple(w / total for w in weights)

        return weights

    @classmethod
    def of(cls, weights: Iterable[float]) -> "ProbDist":
        return cls(tuple(float(w) for w in weights))

    @classmethod
    def uniform(cls, size: int) -> "ProbDist":
        return cls((1.0 / size,) * size)

    @property
    def weights(self) -> Tuple[float, ...]:
        return self.root

    @property
    def alphabet_size(self) -> int:
        return len(self.root)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.root, dtype=float)

    @property
    def support(self) -> np.ndarray:
        return self.array > 0

    def has_full_support(self) -> bool:
        return all(w > 0 for w in self.root)

    def __len__(self) -> int:
        return len(self.root)

    def __getitem__(self, outcome: int) -> float:
        return self.root[outcome]

    def __iter__(self):
        return iter(self.root)


class RenyiOrder(Base):
    """Order α of a Rényi divergence, α ∈ (−∞, +∞].

    α ∈ {0, 1, ∞} carry a special tag and are evaluated by their limiting
    formulas instead of the generic one.
    """
    alpha: float

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, value: float) -> float:
        if math.isnan(value) or value == -math.inf:
            raise ValueError("Rényi order must be a real number or +inf")

        return value

    @classmethod
    def of(cls, value: Union["RenyiOrder", float]) -> "RenyiOrder":
        if isinstance(value, RenyiOrder):
            return value

        return cls(alpha=float(value))

    @property
    def special(self) -> Optional[SpecialOrder]:
        if self.alpha == 0.0:
            return SpecialOrder.ZERO
        if self.alpha == 1.0:
            return SpecialOrder.ONE
        if self.alpha == math.inf:
            return SpecialOrder.INFINITY

        return None
