from typing import List

from pydantic import Field

from models.distribution import ProbDist
from schemas.base import BaseSchema

DEFAULT_ORDERS = [0.0, 0.5, 1.0, 2.0]


class DivergenceRow(BaseSchema):
    alpha: float
    renyi_divergence: float

    @staticmethod
    def header() -> List[str]:
        return ["alpha", "renyi_divergence"]


class DivergenceRequest(BaseSchema):
    p: ProbDist
    q: ProbDist
    alphas: List[float] = Field(default_factory=lambda: list(DEFAULT_ORDERS))


class DivergenceResponse(BaseSchema):
    """Entropy of p, D(p||q), D_∞(p||q) and D_α(p||q) over the requested orders (nats)"""
    entropy: float
    kl_divergence: float
    d_infinity: float
    rows: List[DivergenceRow]
