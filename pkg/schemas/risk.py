from schemas.base import BaseSchema
from models.distribution import ProbDist


class DominanceReport(BaseSchema):
    """First-order stochastic dominance check of the tilted strategy.

    ``violated`` is W_CE < min_x w(x); for r ≥ −1 it is reported False
    without comparison.
    """
    r: float
    alpha: float
    ce: float
    min_work: float
    expected_work: float
    d_infinity: float
    violated: bool


class StrategyResponse(BaseSchema):
    r: float
    alpha: float
    attitude: str
    strategy: ProbDist
    certainty_equivalent: float
    expected_work: float
    free_energy: float
    kT: float


class CeSweepRow(BaseSchema):
    r: float
    alpha: float
    certainty_equivalent: float
    expected_work: float
    min_work: float
    violated: bool
