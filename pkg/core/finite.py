"""Finite-n trade-off between extracted work and success probability.

Work over n i.i.d. rounds depends on the realized sequence only through its
type λ. Alice bets on a type; the risk budget ε bounds how unlikely that
type may be, and the tilt μ ∈ [0,1] of the exponential family between Q^B and
P is chosen so that D(Q^{A*,μ}||P) ≤ ln(1/ε)/n.
"""
import itertools
import math
from typing import Iterable, List, Sequence

import numpy as np
from scipy.special import gammaln, rel_entr, xlogy

from config.base import get_settings
from core.engine import work_vector
from core.errors import DimensionMismatchError, DomainError, NoFeasibleTypeError, SupportMismatchError, TooLargeError
from core.logger import getLogger
from core.prob_core import check_alphabet, check_support, geometric_mixture, kl_divergence, renyi_divergence
from models.distribution import ProbDist
from models.engine import EngineSpec
from models.sequence import RiskBudget, SequenceType, TradeoffPoint
from schemas.finite import FrontierRow, TypeProbability, WorkOutcome

logger = getLogger(__name__)
settings = get_settings()

# relative slack when comparing divergences of distinct types for ties
TIE_TOLERANCE = 1e-12


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")


def _check_rounds(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be a positive number of rounds, got {n}")


def sequence_work(spec: EngineSpec, alice: ProbDist, t: SequenceType) -> float:
    """W_n = kT n (D(λ||Q^B) − D(λ||Q^A)), summed as Σ_x N(x) w(x)"""
    if t.alphabet_size != spec.alphabet_size:
        raise DimensionMismatchError(f"Type over {t.alphabet_size} outcomes, engine over {spec.alphabet_size}")

    return math.fsum(t.array * work_vector(spec, alice))


def outcomes_work(spec: EngineSpec, alice: ProbDist, outcomes: Sequence[int]) -> float:
    """Round-by-round sum of the work collected along an explicit sequence"""
    works = work_vector(spec, alice)

    return math.fsum(works[x] for x in outcomes)


def log_multinomial(counts: Sequence[int]) -> float:
    """ln(n! / Π N(x)!) through log-gamma"""
    counts = np.asarray(counts, dtype=float)

    return float(gammaln(counts.sum() + 1) - gammaln(counts + 1).sum())


def type_log_probability(prior: ProbDist, t: SequenceType) -> TypeProbability:
    lambda_ = t.lambda_
    check_alphabet(prior, lambda_)
    check_support(lambda_, prior)
    exact = log_multinomial(t.counts) + math.fsum(xlogy(t.array, prior.array))

    return TypeProbability(exact=exact, upper_bound=-t.n * kl_divergence(lambda_, prior))


def optimal_bet(spec: EngineSpec, mu: float) -> ProbDist:
    """Q^{A*,μ} ∝ P^μ (Q^B)^{1−μ}"""
    if not 0 <= mu <= 1:
        raise DomainError(f"mu must lie in [0, 1], got {mu}")
    weights, _ = geometric_mixture(spec.prior, spec.bob, mu)

    return weights


def _constraint(spec: EngineSpec, mu: float) -> float:
    try:
        return kl_divergence(optimal_bet(spec, mu), spec.prior)
    except SupportMismatchError:
        return math.inf


def solve_mu(spec: EngineSpec, n: int, epsilon: float) -> RiskBudget:
    """Smallest μ with D(Q^{A*,μ}||P) ≤ ln(1/ε)/n, by bisection.

    The map μ ↦ D(Q^{A*,μ}||P) decreases from D(Q^B||P) at μ = 0 to 0 at μ = 1;
    each bisection step checks that the bracket stays ordered.
    """
    _check_epsilon(epsilon)
    _check_rounds(n)
    budget = -math.log(epsilon) / n

    low, high = 0.0, 1.0
    g_low, g_high = _constraint(spec, low), 0.0
    if g_low <= budget:
        return RiskBudget(epsilon=epsilon, mu=0.0)

    for iteration in range(settings.BISECTION_MAX_ITERATIONS):
        if high - low <= settings.BISECTION_TOLERANCE:
            break
        middle = 0.5 * (low + high)
        g_middle = _constraint(spec, middle)
        if not g_high - TIE_TOLERANCE <= g_middle <= g_low + TIE_TOLERANCE:
            raise DomainError(f"Constraint map is not monotone on [{low}, {high}]")
        if g_middle <= budget:
            high, g_high = middle, g_middle
        else:
            low, g_low = middle, g_middle
    logger.debug(f"solve_mu: n={n}, epsilon={epsilon}, mu={high}, iterations={iteration + 1}")

    return RiskBudget(epsilon=epsilon, mu=high)


def work_bound(spec: EngineSpec, n: int, budget: RiskBudget) -> float:
    """kT (n D_μ(P||Q^B) + μ/(1−μ) ln ε); at μ = 1 only ε = 1 is admissible"""
    _check_rounds(n)
    mu, epsilon = budget.mu, budget.epsilon
    if mu == 1.0:
        if epsilon < 1.0:
            raise DomainError("mu = 1 leaves no room for a risk budget below 1")
        return spec.kt * n * kl_divergence(spec.prior, spec.bob)

    penalty = mu / (1.0 - mu) * math.log(epsilon)
    return spec.kt * (n * renyi_divergence(spec.prior, spec.bob, mu) + penalty)


def enumerate_types(alphabet_size: int, n: int) -> List[SequenceType]:
    """All compositions of n into ``alphabet_size`` parts, first count ascending"""
    _check_rounds(n)
    total = math.comb(n + alphabet_size - 1, alphabet_size - 1)
    if total > settings.ENUMERATION_LIMIT:
        raise TooLargeError(f"{total} types exceed the enumeration limit {settings.ENUMERATION_LIMIT}")
    logger.debug(f"enumerate_types: k={alphabet_size}, n={n}, {total} types")

    types = []
    for bars in itertools.combinations(range(n + alphabet_size - 1), alphabet_size - 1):
        edges = (-1,) + bars + (n + alphabet_size - 1,)
        types.append(SequenceType(counts=tuple(edges[i + 1] - edges[i] - 1 for i in range(alphabet_size)), n=n))

    return types


def _type_matrix(alphabet_size: int, n: int):
    types = enumerate_types(alphabet_size, n)
    return types, np.array([t.counts for t in types], dtype=float)


def _log_type_probabilities(prior: ProbDist, counts: np.ndarray) -> np.ndarray:
    n = counts[0].sum()
    return gammaln(n + 1) - gammaln(counts + 1).sum(axis=1) + xlogy(counts, prior.array).sum(axis=1)


def brute_force_frontier(spec: EngineSpec, n: int, epsilon: float) -> TradeoffPoint:
    """Scan every type with exact probability ≥ ε and keep the one maximizing D(λ||Q^B)"""
    _check_epsilon(epsilon)
    types, counts = _type_matrix(spec.alphabet_size, n)
    log_probability = _log_type_probabilities(spec.prior, counts)
    feasible = log_probability >= math.log(epsilon)
    if not feasible.any():
        raise NoFeasibleTypeError(f"No type of length {n} has probability >= {epsilon}")

    rewards = rel_entr(counts / n, spec.bob.array).sum(axis=1)
    best = rewards[feasible].max()
    ties = feasible & (rewards >= best - TIE_TOLERANCE * max(1.0, abs(best)))
    index = max(np.flatnonzero(ties), key=lambda i: (counts[i, 0], -i))
    chosen = types[index]

    return TradeoffPoint(n=n, budget=solve_mu(spec, n, epsilon), strategy=chosen.lambda_,
                         work_bound=spec.kt * n * float(rewards[index]),
                         constraint_value=kl_divergence(chosen.lambda_, spec.prior),
                         success_probability=float(np.exp(log_probability[index])), matched_type=chosen)


def nearest_type(dist: ProbDist, n: int) -> SequenceType:
    """Largest-remainder rounding of n·dist to a type; ℓ1 error at most k/(2n)"""
    _check_rounds(n)
    scaled = dist.array * n
    counts = np.floor(scaled).astype(int)
    remainder = n - int(counts.sum())
    order = np.argsort(-(scaled - counts), kind="stable")
    counts[order[:remainder]] += 1

    return SequenceType(counts=tuple(int(c) for c in counts), n=n)


def frontier_point(spec: EngineSpec, n: int, epsilon: float) -> TradeoffPoint:
    budget = solve_mu(spec, n, epsilon)
    strategy = optimal_bet(spec, budget.mu)
    matched = nearest_type(strategy, n)
    try:
        success = math.exp(type_log_probability(spec.prior, matched).exact)
    except SupportMismatchError:
        success = 0.0

    return TradeoffPoint(n=n, budget=budget, strategy=strategy, work_bound=work_bound(spec, n, budget),
                         constraint_value=kl_divergence(strategy, spec.prior), success_probability=success,
                         matched_type=matched)


def work_distribution(spec: EngineSpec, alice: ProbDist, n: int) -> List[WorkOutcome]:
    """Work and exact probability of every type; the payoff Alice gets when her guess misses"""
    types, counts = _type_matrix(spec.alphabet_size, n)
    probabilities = np.exp(_log_type_probabilities(spec.prior, counts))
    works = counts @ work_vector(spec, alice)

    return [WorkOutcome(sequence_type=t, work=float(w), probability=float(p))
            for t, w, p in zip(types, works, probabilities)]


def frontier_row(spec: EngineSpec, n: int, epsilon: float) -> FrontierRow:
    point = frontier_point(spec, n, epsilon)
    oracle_work, oracle_probability = None, None
    try:
        oracle = brute_force_frontier(spec, n, epsilon)
        oracle_work, oracle_probability = oracle.work_bound / n, oracle.success_probability
    except NoFeasibleTypeError:
        logger.info(f"frontier: no feasible type at n={n}, epsilon={epsilon}")

    return FrontierRow(n=n, epsilon=epsilon, mu=point.budget.mu, work_bound_per_round=point.work_bound / n,
                       oracle_work_per_round=oracle_work, oracle_success_prob=oracle_probability,
                       strategy=list(point.strategy.weights))


def frontier_sweep(spec: EngineSpec, ns: Iterable[int], epsilons: Iterable[float]) -> List[FrontierRow]:
    epsilons = list(epsilons)
    return [frontier_row(spec, n, epsilon) for n in ns for epsilon in epsilons]
