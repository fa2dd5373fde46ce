"""Divergences and entropies over finite alphabets.

Everything is in nats. Energy scales (kT) are applied by the engine layer,
never here.
"""
import math
from typing import Iterable, Tuple, Union

import numpy as np
from scipy.special import logsumexp, rel_entr, xlogy

from core.enums.renyi_order import SpecialOrder
from core.errors import DegenerateDivergenceError, DimensionMismatchError, SupportMismatchError
from models.distribution import ProbDist, RenyiOrder
from schemas.divergence import DivergenceResponse, DivergenceRow


def check_alphabet(p: ProbDist, q: ProbDist) -> None:
    if p.alphabet_size != q.alphabet_size:
        raise DimensionMismatchError(
            f"Alphabet sizes differ: {p.alphabet_size} != {q.alphabet_size}")


def check_support(p: ProbDist, q: ProbDist) -> None:
    """Require support(p) ⊆ support(q)"""
    uncovered = np.flatnonzero(p.support & ~q.support)
    if uncovered.size:
        raise SupportMismatchError(
            f"p puts mass on outcomes {uncovered.tolist()} where q vanishes")


def shannon_entropy(p: ProbDist) -> float:
    a = p.array
    return float(-np.sum(xlogy(a, a)))


def kl_divergence(p: ProbDist, q: ProbDist) -> float:
    """D(p||q) = Σ p ln(p/q), with 0·ln 0 = 0"""
    check_alphabet(p, q)
    check_support(p, q)

    return float(np.sum(rel_entr(p.array, q.array)))


def renyi_divergence(p: ProbDist, q: ProbDist, order: Union[RenyiOrder, float]) -> float:
    """Rényi divergence D_α(p||q) for α ∈ (−∞, +∞].

    The generic order is evaluated as logsumexp(α ln p + (1−α) ln q)/(α−1)
    over the outcomes that contribute, so weights down to 1e-300 stay finite.
    """
    order = RenyiOrder.of(order)
    check_alphabet(p, q)
    a, b = p.array, q.array

    special = order.special
    if special is SpecialOrder.ONE:
        return kl_divergence(p, q)

    if special is SpecialOrder.INFINITY:
        check_support(p, q)
        mask = a > 0
        return float(np.max(np.log(a[mask]) - np.log(b[mask])))

    if special is SpecialOrder.ZERO:
        mass = math.fsum(b[a > 0])
        if mass == 0.0:
            raise DegenerateDivergenceError("q puts no mass on the support of p", math.inf)
        return -math.log(mass)

    alpha = order.alpha
    if alpha > 1:
        check_support(p, q)
        mask = a > 0
    elif alpha > 0:
        mask = (a > 0) & (b > 0)
        if not mask.any():
            raise DegenerateDivergenceError("Supports of p and q do not overlap", math.inf)
    else:
        # p^α diverges on zeros of p for negative orders
        if np.any((a == 0) & (b > 0)):
            raise DegenerateDivergenceError(
                f"p vanishes where q does not; D_{alpha} is -inf", -math.inf)
        mask = (a > 0) & (b > 0)
        if not mask.any():
            raise DegenerateDivergenceError("Supports of p and q do not overlap", math.inf)
        # zeros of q on the support of p: report the extended value but do not return it
        if np.any((a > 0) & (b == 0)):
            log_terms = alpha * np.log(a[mask]) + (1.0 - alpha) * np.log(b[mask])
            raise DegenerateDivergenceError(
                f"q vanishes on the support of p; D_{alpha} is not defined there",
                float(logsumexp(log_terms) / (alpha - 1.0)))

    log_terms = alpha * np.log(a[mask]) + (1.0 - alpha) * np.log(b[mask])
    return float(logsumexp(log_terms) / (alpha - 1.0))


def geometric_mixture(p: ProbDist, q: ProbDist, order: float) -> Tuple[ProbDist, float]:
    """Normalized p^order q^(1−order) and ln of its normalizer.

    This is the exponential family through q (order 0) and p (order 1); the
    log normalizer equals (order − 1)·D_order(p||q).
    """
    check_alphabet(p, q)
    a, b = p.array, q.array
    if order < 0 and np.any((a == 0) & (b > 0)):
        raise DegenerateDivergenceError(f"p^{order} diverges on a zero of p", math.inf)

    with np.errstate(divide="ignore"):
        log_a, log_b = np.log(a), np.log(b)
    if order == 0.0:
        log_weights = np.where(b > 0, log_b, -np.inf)
    elif order == 1.0:
        log_weights = np.where(a > 0, log_a, -np.inf)
    else:
        mask = (a > 0) & (b > 0)
        log_weights = np.full(a.shape, -np.inf)
        log_weights[mask] = order * log_a[mask] + (1.0 - order) * log_b[mask]
    if not np.isfinite(log_weights).any():
        raise DegenerateDivergenceError("Geometric mixture has no mass", math.inf)

    log_normalizer = float(logsumexp(log_weights))
    weights = np.exp(log_weights - log_normalizer)

    return ProbDist.of(weights / weights.sum()), log_normalizer


def divergence_report(p: ProbDist, q: ProbDist, orders: Iterable[float]) -> DivergenceResponse:
    rows = [DivergenceRow(alpha=float(alpha), renyi_divergence=renyi_divergence(p, q, alpha)) for alpha in orders]

    return DivergenceResponse(entropy=shannon_entropy(p), kl_divergence=kl_divergence(p, q),
                              d_infinity=renyi_divergence(p, q, math.inf), rows=rows)
