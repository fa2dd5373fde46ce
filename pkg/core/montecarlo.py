"""Seeded Monte Carlo harness for the engine and the betting game.

Trials are grouped in fixed blocks of ``TRIALS_PER_BLOCK``; block b draws from
a PCG64 generator seeded with ``SeedSequence(seed, spawn_key=(b,))``. The
samples of a trial depend only on the seed and the trial index, never on the
worker count or on ``SIM_CHUNK_DRAWS``, which only bounds the draws held in
memory at once.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from config.base import get_settings
from core.engine import work_vector
from core.errors import DomainError
from core.kelly import log_growth_rate, log_multipliers
from core.logger import getLogger
from core.risk import cara_utility, cara_utility_inverse, optimal_strategy
from models.betting import BettingSpec
from models.distribution import ProbDist
from models.risk import RiskProfile
from models.simulation import SimConfig
from schemas.simulation import KellySimReport, SimReport

logger = getLogger(__name__)
settings = get_settings()

# every seeded result depends on this value
TRIALS_PER_BLOCK = 1024


def _block_sizes(trials: int) -> List[int]:
    full, rest = divmod(trials, TRIALS_PER_BLOCK)

    return [TRIALS_PER_BLOCK] * full + ([rest] if rest else [])


def _sample_block(cdf: np.ndarray, rounds: int, trials: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    """Outcome counts of ``trials`` sequences, by inverse CDF on uniform draws.

    Rows are drawn in order from one generator, in batches of at most
    ``SIM_CHUNK_DRAWS`` uniforms; the batching does not change the stream.
    """
    generator = np.random.Generator(np.random.PCG64(seed_seq))
    batch = max(1, settings.SIM_CHUNK_DRAWS // rounds)
    outcome_range = np.arange(len(cdf))
    counts = []
    for start in range(0, trials, batch):
        size = min(batch, trials - start)
        outcomes = np.searchsorted(cdf, generator.random((size, rounds)), side="right")
        np.minimum(outcomes, len(cdf) - 1, out=outcomes)
        counts.append((outcomes[..., None] == outcome_range).sum(axis=1))

    return np.concatenate(counts, axis=0)


def sample_counts(prior: ProbDist, rounds: int, trials: int, seed: int) -> np.ndarray:
    """Type counts of ``trials`` i.i.d. sequences of length ``rounds``, shape (trials, k)"""
    cdf = np.cumsum(prior.array)
    sizes = _block_sizes(trials)
    logger.debug(f"sample_counts: {trials} trials x {rounds} rounds in {len(sizes)} blocks, seed={seed}")

    def run(block: int) -> np.ndarray:
        return _sample_block(cdf, rounds, sizes[block], np.random.SeedSequence(seed, spawn_key=(block,)))

    if settings.SIM_WORKERS > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=settings.SIM_WORKERS) as executor:
            blocks = list(executor.map(run, range(len(sizes))))
    else:
        blocks = [run(block) for block in range(len(sizes))]

    return np.concatenate(blocks, axis=0)


def _mean_and_se(values: np.ndarray) -> Tuple[float, float]:
    """Compensated mean and the standard error from the two-pass sample variance"""
    count = len(values)
    mean = math.fsum(values) / count
    if count < 2:
        return mean, 0.0
    variance = math.fsum((values - mean) ** 2) / (count - 1)

    return mean, math.sqrt(variance / count)


def _type_histogram(counts: np.ndarray) -> List[List[float]]:
    rows, frequencies = np.unique(counts, axis=0, return_counts=True)
    trials = len(counts)

    return [[float(c) for c in row] + [int(f) / trials] for row, f in zip(rows, frequencies)]


def simulate(config: SimConfig, profile: RiskProfile) -> SimReport:
    spec = config.spec
    strategy = config.strategy
    if strategy is None:
        strategy = optimal_strategy(spec, profile).weights
    works = work_vector(spec, strategy)

    counts = sample_counts(spec.prior, config.rounds, config.trials, config.seed)
    trial_work = counts @ works
    trial_utility = counts @ cara_utility(works, profile, spec.kt) / config.rounds

    mean_work, mean_work_se = _mean_and_se(trial_work)
    mean_utility, mean_utility_se = _mean_and_se(trial_utility)
    empirical_ce = cara_utility_inverse(mean_utility, profile, spec.kt)
    # delta method: d u^{-1}/du = kT/(1 − r u)
    empirical_ce_se = spec.kt * mean_utility_se / (1.0 - profile.r * mean_utility)

    success_count, target = None, None
    if config.target_type is not None:
        target = list(config.target_type.counts)
        success_count = int(np.all(counts == np.asarray(target), axis=1).sum())

    logger.info(f"simulate: trials={config.trials}, rounds={config.rounds}, seed={config.seed}, "
                f"mean_work={mean_work!r}, empirical_ce={empirical_ce!r}")

    return SimReport(trials=config.trials, rounds=config.rounds, seed=config.seed, r=profile.r, kT=spec.kt,
                     strategy=list(strategy.weights), mean_work=mean_work, mean_work_se=mean_work_se,
                     mean_work_per_round=mean_work / config.rounds, mean_utility=mean_utility,
                     mean_utility_se=mean_utility_se, empirical_ce=empirical_ce, empirical_ce_se=empirical_ce_se,
                     type_histogram=_type_histogram(counts), target_type=target, success_count=success_count)


def simulate_kelly(spec: BettingSpec, rounds: int, trials: int, seed: Optional[int] = None) -> KellySimReport:
    """Full-reinvestment wealth paths; reports the mean of (1/n) ln(W_n/W_i)"""
    if rounds < 1 or trials < 1:
        raise DomainError("rounds and trials must be positive")
    seed = settings.DEFAULT_SEED if seed is None else seed
    counts = sample_counts(spec.prior, rounds, trials, seed)
    growth = counts @ log_multipliers(spec) / rounds
    mean, se = _mean_and_se(growth)

    return KellySimReport(trials=trials, rounds=rounds, seed=seed, mean_log_growth=mean, mean_log_growth_se=se,
                          expected_log_growth=log_growth_rate(spec))
