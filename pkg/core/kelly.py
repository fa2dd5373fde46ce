"""Kelly betting with full reinvestment, the multiplicative twin of the engine.

With fair odds o_x = 1/Q^B(x) and fractions f = Q^A, ln(wealth ratio) after a
sequence of type t equals the engine's work for t divided by kT.
"""
import math
from typing import Iterable, List

import numpy as np

from core.errors import DimensionMismatchError, DomainError
from core.logger import getLogger
from core.engine import average_work
from core.prob_core import kl_divergence
from core.risk import optimal_strategy
from models.betting import BettingSpec
from models.distribution import ProbDist
from models.engine import EngineSpec
from models.risk import RiskProfile
from models.sequence import SequenceType
from schemas.kelly import KellyRow

logger = getLogger(__name__)

LOG_FLOAT_TINY = math.log(np.finfo(float).tiny)


def log_multipliers(spec: BettingSpec) -> np.ndarray:
    """ln(f_x o_x), the per-round log wealth factor of each outcome"""
    return np.log(spec.fractions.array) + np.log(spec.odds_array)


def log_wealth_ratio(spec: BettingSpec, t: SequenceType) -> float:
    if t.alphabet_size != len(spec.odds):
        raise DimensionMismatchError(f"Type over {t.alphabet_size} outcomes, race over {len(spec.odds)}")

    return math.fsum(t.array * log_multipliers(spec))


def wealth_after(spec: BettingSpec, t: SequenceType, initial: float) -> float:
    """initial · Π (f_x o_x)^{N(x)}, strictly positive.

    Raises DomainError when the wealth leaves the normal float range; use
    ``log_wealth_ratio`` for long sequences.
    """
    if initial <= 0:
        raise DomainError("Initial wealth must be positive")

    log_wealth = math.log(initial) + log_wealth_ratio(spec, t)
    try:
        wealth = math.exp(log_wealth)
    except OverflowError:
        wealth = math.inf
    if log_wealth < LOG_FLOAT_TINY or not math.isfinite(wealth):
        raise DomainError(f"Wealth exp({log_wealth:.6g}) is outside the float range; use log_wealth_ratio")

    return wealth


def log_growth_rate(spec: BettingSpec) -> float:
    """Expected log wealth factor per round, Σ P ln(f o)"""
    return math.fsum(spec.prior.array * log_multipliers(spec))


def divergence_growth_rate(spec: BettingSpec) -> float:
    """D(P||Q^B) − D(P||Q^A); equal to log_growth_rate for fair odds only"""
    if not spec.is_fair:
        raise DomainError(f"Divergence form needs fair odds, overround is {spec.overround!r}")
    implied = spec.implied_distribution()

    return kl_divergence(spec.prior, implied) - kl_divergence(spec.prior, spec.fractions)


def betting_from_engine(engine: EngineSpec, alice: ProbDist) -> BettingSpec:
    """The fair-odds race isomorphic to an engine instance"""
    return BettingSpec(prior=engine.prior, odds=tuple(float(o) for o in 1.0 / engine.bob.array),
                       fractions=alice)


def isomorphism_table(engine: EngineSpec, r_values: Iterable[float]) -> List[KellyRow]:
    """Growth rate next to work/kT for the prior, Bob's partition and tilted strategies"""
    strategies = [("prior", None, engine.prior), ("bob", None, engine.bob)]
    for r in r_values:
        strategies.append(("tilted", r, optimal_strategy(engine, RiskProfile(r=r)).weights))

    rows = []
    for label, r, strategy in strategies:
        if not strategy.has_full_support():
            logger.info(f"kelly-compare: skipping {label} strategy without full support")
            continue
        growth = log_growth_rate(betting_from_engine(engine, strategy))
        work = average_work(engine, strategy) / engine.kt
        rows.append(KellyRow(strategy=label, r=r, weights=list(strategy.weights), log_growth_rate=growth,
                             work_over_kT=work, difference=growth - work))

    return rows
