"""Work accounting of the adversarial Szilard engine.

Bob fixes the partition Q^B, the referee draws the outcome from P and Alice
moves the partition to Q^A. Work is additive and expressed in the energy
units of ``spec.kt``; the binary box is the alphabet-size-2 case of the
multi-level engine.
"""
import numpy as np

from core.errors import DimensionMismatchError, DomainError, ZeroStrategyWeightError
from core.logger import getLogger
from core.prob_core import check_alphabet, kl_divergence
from models.distribution import ProbDist
from models.engine import EnergyLevels, EngineSpec

logger = getLogger(__name__)


def _check_strategy(spec: EngineSpec, alice: ProbDist) -> None:
    check_alphabet(spec.prior, alice)
    if not alice.has_full_support():
        raise ZeroStrategyWeightError(
            "Alice's strategy must put weight on every outcome; a zero weight exposes an infinite loss")


def _check_outcome(spec: EngineSpec, outcome: int) -> None:
    if not 0 <= outcome < spec.alphabet_size:
        raise IndexError(f"Outcome {outcome} outside alphabet of size {spec.alphabet_size}")


def work_vector(spec: EngineSpec, alice: ProbDist) -> np.ndarray:
    """w(x) = kT ln(Q^A(x)/Q^B(x)) for every outcome"""
    _check_strategy(spec, alice)

    return spec.kt * (np.log(alice.array) - np.log(spec.bob.array))


def work_per_outcome(spec: EngineSpec, alice: ProbDist, outcome: int) -> float:
    _check_outcome(spec, outcome)

    return float(work_vector(spec, alice)[outcome])


def average_work(spec: EngineSpec, alice: ProbDist) -> float:
    """W = kT (D(P||Q^B) − D(P||Q^A))"""
    _check_strategy(spec, alice)

    return spec.kt * (kl_divergence(spec.prior, spec.bob) - kl_divergence(spec.prior, alice))


def ideal_protocol_work(spec: EngineSpec) -> float:
    """Average work of the non-adversarial protocol that quenches to the prior's levels"""
    return spec.kt * kl_divergence(spec.prior, spec.bob)


def levels_from_dist(d: ProbDist, kt: float = 1.0) -> EnergyLevels:
    """E(x) = −kT ln d(x), in the gauge Z = 1"""
    if not d.has_full_support():
        raise ZeroStrategyWeightError("A zero weight has no finite energy level")

    return EnergyLevels(energies=tuple(float(e) for e in -kt * np.log(d.array)), kT=kt)


def quench_work(bob_levels: EnergyLevels, alice_levels: EnergyLevels, outcome: int) -> float:
    """Work of the sudden quench E^B → E^A with the system found in ``outcome``"""
    return bob_levels.energies[outcome] - alice_levels.energies[outcome]


def isothermal_work(bob_levels: EnergyLevels, alice_levels: EnergyLevels) -> float:
    """Work of the quasi-static return E^A → E^B: the equilibrium free energy change"""
    return bob_levels.kt * (bob_levels.log_partition_fn - alice_levels.log_partition_fn)


def levels_work(bob_levels: EnergyLevels, alice_levels: EnergyLevels, outcome: int) -> float:
    if bob_levels.kt != alice_levels.kt:
        raise DomainError("Both level sets must share one temperature")
    if len(bob_levels.energies) != len(alice_levels.energies):
        raise DimensionMismatchError("Both level sets must cover the same alphabet")

    return quench_work(bob_levels, alice_levels, outcome) + isothermal_work(bob_levels, alice_levels)


def protocol_work(spec: EngineSpec, alice: ProbDist, outcome: int,
                  bob_gauge: float = 0.0, alice_gauge: float = 0.0) -> float:
    """Work of the quench-thermalize-shift protocol for one outcome.

    The gauge offsets move each level set by a constant; the ln Z terms absorb
    them, so the result does not depend on either offset.
    """
    _check_strategy(spec, alice)
    _check_outcome(spec, outcome)
    bob_levels = levels_from_dist(spec.bob, spec.kt).shifted(bob_gauge)
    alice_levels = levels_from_dist(alice, spec.kt).shifted(alice_gauge)

    return levels_work(bob_levels, alice_levels, outcome)
