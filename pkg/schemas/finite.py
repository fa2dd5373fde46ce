from typing import List, Optional

from models.sequence import SequenceType
from schemas.base import BaseSchema


class TypeProbability(BaseSchema):
    """Exact log-probability of a type and its exponential upper bound (nats)"""
    exact: float
    upper_bound: float


class WorkOutcome(BaseSchema):
    """Work collected when the realized sequence has type ``sequence_type``"""
    sequence_type: SequenceType
    work: float
    probability: float


class FrontierRow(BaseSchema):
    """One row of the frontier CSV; oracle columns stay empty when no type is feasible"""
    n: int
    epsilon: float
    mu: float
    work_bound_per_round: float
    oracle_work_per_round: Optional[float] = None
    oracle_success_prob: Optional[float] = None
    strategy: List[float]

    @staticmethod
    def header(alphabet_size: int) -> List[str]:
        return ["n", "epsilon", "mu", "work_bound_per_round", "oracle_work_per_round",
                "oracle_success_prob"] + [f"q_{x}" for x in range(alphabet_size)]
