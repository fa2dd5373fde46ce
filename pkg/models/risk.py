from pydantic import computed_field, field_validator

from core.base import Base
from core.enums.risk_attitude import RiskAttitude
from core.errors import DomainError
from models.distribution import ProbDist


class RiskProfile(Base):
    """CARA risk parameter r and the Rényi order α = 1/(1+r) it selects"""
    r: float

    @field_validator("r")
    @classmethod
    def validate_r(cls, value: float) -> float:
        if value == -1.0:
            raise DomainError("r = -1 has no Rényi order: alpha = 1/(1+r) has a pole there")
        if value != value:
            raise DomainError("r must be a number")

        return value

    @computed_field
    @property
    def alpha(self) -> float:
        return 1.0 / (1.0 + self.r)

    @property
    def attitude(self) -> RiskAttitude:
        return RiskAttitude.of(self.r)


class TiltedDistribution(Base):
    """Geometric tilt of the prior towards Bob's partition.

    ``weights`` ∝ P^order (Q^B)^(1−order); ``log_normalizer`` is
    ln Σ P^order (Q^B)^(1−order) = (order − 1)·D_order(P||Q^B).
    """
    weights: ProbDist
    log_normalizer: float
    source_prior: ProbDist
    source_bob: ProbDist
    order: float
