"""CARA expected-utility layer on top of the engine.

u_r(w) = (1 − exp(−r w/kT))/r, with the linear limit w/kT at r = 0. Utilities
are dimensionless; energies carry the units of ``spec.kt``.
"""
import math
from typing import Iterable, List, Union

import numpy as np
from numpy.typing import ArrayLike

from config.base import get_settings
from core.engine import work_vector
from core.errors import DomainError, UnsupportedAlphabetError
from core.logger import getLogger
from core.prob_core import geometric_mixture, kl_divergence, renyi_divergence
from models.distribution import ProbDist
from models.engine import EngineSpec
from models.risk import RiskProfile, TiltedDistribution
from schemas.risk import CeSweepRow, DominanceReport, StrategyResponse

logger = getLogger(__name__)
settings = get_settings()

Number = Union[float, np.ndarray]


def cara_utility(w: ArrayLike, profile: RiskProfile, kt: float = 1.0) -> Number:
    scaled = np.asarray(w, dtype=float) / kt
    if profile.r == 0:
        utility = scaled
    else:
        utility = -np.expm1(-profile.r * scaled) / profile.r

    return float(utility) if utility.ndim == 0 else utility


def cara_utility_inverse(u: ArrayLike, profile: RiskProfile, kt: float = 1.0) -> Number:
    """u_r^{-1}(u) = −(kT/r) ln(1 − r u)"""
    u = np.asarray(u, dtype=float)
    if profile.r == 0:
        energy = kt * u
    else:
        argument = 1.0 - profile.r * u
        if np.any(argument <= 0):
            raise DomainError(f"1 - r*u must be positive (r={profile.r})")
        energy = -kt * np.log1p(-profile.r * u) / profile.r

    return float(energy) if energy.ndim == 0 else energy


def expected_utility(spec: EngineSpec, alice: ProbDist, profile: RiskProfile) -> float:
    """Σ_x P(x) u_r(w(x)), summed along the work path"""
    utilities = cara_utility(work_vector(spec, alice), profile, spec.kt)

    return math.fsum(spec.prior.array * utilities)


def expected_utility_closed_form(spec: EngineSpec, alice: ProbDist, profile: RiskProfile) -> float:
    """(1/r)(1 − Σ P (Q^A/Q^B)^{−r}); the r = 0 case is Σ P ln(Q^A/Q^B)"""
    log_ratio = np.log(alice.array) - np.log(spec.bob.array)
    prior = spec.prior.array
    if profile.r == 0:
        return math.fsum(prior * log_ratio)

    return (1.0 - math.fsum(prior * np.exp(-profile.r * log_ratio))) / profile.r


def optimal_strategy(spec: EngineSpec, profile: RiskProfile) -> TiltedDistribution:
    """Q^{A,r} ∝ P^{1/(1+r)} (Q^B)^{r/(1+r)}"""
    weights, log_normalizer = geometric_mixture(spec.prior, spec.bob, profile.alpha)

    return TiltedDistribution(weights=weights, log_normalizer=log_normalizer, source_prior=spec.prior,
                              source_bob=spec.bob, order=profile.alpha)


def certainty_equivalent(spec: EngineSpec, profile: RiskProfile) -> float:
    """W_CE = kT D_{1/(1+r)}(P||Q^B)"""
    return spec.kt * renyi_divergence(spec.prior, spec.bob, profile.alpha)


def n_round_certainty_equivalent(spec: EngineSpec, profile: RiskProfile, n: int) -> float:
    """CE of n i.i.d. rounds played with the fixed single-round optimal strategy"""
    if n < 1:
        raise DomainError("n must be a positive number of rounds")

    return n * certainty_equivalent(spec, profile)


def strategy_certainty_equivalent(spec: EngineSpec, alice: ProbDist, profile: RiskProfile) -> float:
    """u_r^{-1}(E u_r(w)) for an arbitrary strategy"""
    return cara_utility_inverse(expected_utility(spec, alice, profile), profile, spec.kt)


def expected_work_optimal(spec: EngineSpec, profile: RiskProfile) -> float:
    """W^(r) = kT (α D(P||Q^B) + (1−α) D_α(P||Q^B)), α = 1/(1+r)"""
    alpha = profile.alpha
    free_energy = kl_divergence(spec.prior, spec.bob)
    if alpha == 1.0:
        return spec.kt * free_energy

    return spec.kt * (alpha * free_energy + (1.0 - alpha) * renyi_divergence(spec.prior, spec.bob, alpha))


def dominance_audit(spec: EngineSpec, profile: RiskProfile) -> DominanceReport:
    """Compare W_CE with the worst work outcome of the tilted strategy.

    Work outcomes are taken over the prior's support and evaluated in log
    domain, ln Q^A − ln Q^B = α ln(P/Q^B) − ln Z, so strategies whose weights
    underflow (r just below −1) still get a finite minimum.
    """
    tilted = optimal_strategy(spec, profile)
    support = spec.prior.support
    log_ratio = np.log(spec.prior.array[support]) - np.log(spec.bob.array[support])
    min_work = spec.kt * float(np.min(profile.alpha * log_ratio - tilted.log_normalizer))
    ce = certainty_equivalent(spec, profile)
    d_infinity = renyi_divergence(spec.prior, spec.bob, math.inf)

    violated = False
    if profile.r < -1:
        violated = ce < min_work - settings.DOMINANCE_SLACK * spec.kt
        if violated:
            logger.warning(f"Stochastic dominance violated: ce={ce!r} < min_work={min_work!r} at r={profile.r}")

    return DominanceReport(r=profile.r, alpha=profile.alpha, ce=ce, min_work=min_work,
                           expected_work=expected_work_optimal(spec, profile), d_infinity=spec.kt * d_infinity,
                           violated=violated)


def _simplex_grid(size: int, grid: int) -> np.ndarray:
    """Interior points of the simplex with coordinates in multiples of 1/grid"""
    steps = np.arange(1, grid)
    if size == 2:
        return np.column_stack([steps, grid - steps]) / grid

    first, second = np.meshgrid(steps, steps, indexing="ij")
    first, second = first.ravel(), second.ravel()
    third = grid - first - second
    keep = third >= 1

    return np.column_stack([first[keep], second[keep], third[keep]]) / grid


def brute_force_optimal(spec: EngineSpec, profile: RiskProfile, grid: int, maximize: bool = True) -> ProbDist:
    """Exhaustive simplex-grid optimizer of the expected utility.

    Ties go to the lowest-index grid point. For r < −1 the tilted strategy is a
    minimum of the expected utility, so the oracle is run with
    ``maximize=False`` to reproduce it; the maximum then sits on the grid
    boundary.
    """
    if spec.alphabet_size not in (2, 3):
        raise UnsupportedAlphabetError(f"Grid oracle covers alphabets of size 2 or 3, not {spec.alphabet_size}")
    if grid < 100:
        raise DomainError("Grid resolution must be at least 100")

    candidates = _simplex_grid(spec.alphabet_size, grid)
    logger.debug(f"brute_force_optimal: {len(candidates)} grid points, r={profile.r}, maximize={maximize}")
    works = spec.kt * (np.log(candidates) - np.log(spec.bob.array))
    utilities = cara_utility(works, profile, spec.kt) @ spec.prior.array
    index = int(np.argmax(utilities) if maximize else np.argmin(utilities))

    return ProbDist.of(candidates[index])


def strategy_summary(spec: EngineSpec, profile: RiskProfile) -> StrategyResponse:
    return StrategyResponse(r=profile.r, alpha=profile.alpha, attitude=profile.attitude.value,
                            strategy=optimal_strategy(spec, profile).weights,
                            certainty_equivalent=certainty_equivalent(spec, profile),
                            expected_work=expected_work_optimal(spec, profile),
                            free_energy=spec.kt * kl_divergence(spec.prior, spec.bob), kT=spec.kt)


def ce_sweep(spec: EngineSpec, r_values: Iterable[float]) -> List[CeSweepRow]:
    rows = []
    for r in r_values:
        profile = RiskProfile(r=r)
        audit = dominance_audit(spec, profile)
        rows.append(CeSweepRow(r=profile.r, alpha=profile.alpha, certainty_equivalent=audit.ce,
                               expected_work=expected_work_optimal(spec, profile), min_work=audit.min_work,
                               violated=audit.violated))
    logger.debug(f"ce_sweep: {len(rows)} rows")

    return rows
