from typing import List, Optional

from pydantic import computed_field

from schemas.base import BaseSchema


class SimReport(BaseSchema):
    """Aggregates of one Monte Carlo run.

    Works are totals over ``rounds`` rounds; utilities are per-round averages,
    so ``empirical_ce`` estimates the single-round certainty equivalent.
    ``type_histogram`` rows are ``[counts..., frequency]``.
    """
    trials: int
    rounds: int
    seed: int
    r: float
    kT: float
    strategy: List[float]
    mean_work: float
    mean_work_se: float
    mean_work_per_round: float
    mean_utility: float
    mean_utility_se: float
    empirical_ce: float
    empirical_ce_se: float
    type_histogram: List[List[float]]
    target_type: Optional[List[int]] = None
    success_count: Optional[int] = None

    @computed_field
    @property
    def success_rate(self) -> Optional[float]:
        if self.success_count is None:
            return None

        return self.success_count / self.trials


class KellySimReport(BaseSchema):
    """Per-round log growth (1/n) ln(W_n/W_i) averaged over trials"""
    trials: int
    rounds: int
    seed: int
    mean_log_growth: float
    mean_log_growth_se: float
    expected_log_growth: float
