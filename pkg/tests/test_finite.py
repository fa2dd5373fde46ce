import math
from fractions import Fraction
from unittest import mock

import numpy as np
import pytest
from pydantic import ValidationError

from config.base import get_settings
from core.engine import average_work
from core.errors import DimensionMismatchError, DomainError, NoFeasibleTypeError, TooLargeError
from core.finite import (brute_force_frontier, enumerate_types, frontier_point, frontier_sweep, log_multinomial,
                         nearest_type, optimal_bet, outcomes_work, sequence_work, solve_mu, type_log_probability,
                         work_bound, work_distribution)
from core.prob_core import kl_divergence
from core.risk import optimal_strategy
from models.distribution import ProbDist
from models.risk import RiskProfile
from models.sequence import RiskBudget, SequenceType
from tests.base import BaseTestCase, random_dist, random_specs, reference_spec

settings = get_settings()


class TestSequenceType(BaseTestCase):

    def test_from_sequence(self):
        t = SequenceType.from_sequence([0, 0, 1, 0], alphabet_size=2)
        assert t.counts == (3, 1)
        assert t.n == 4
        assert t.frequencies == (Fraction(3, 4), Fraction(1, 4))
        assert t.lambda_.weights == (0.75, 0.25)

    def test_counts_must_sum_to_n(self):
        with pytest.raises(ValidationError):
            SequenceType(counts=(3, 1), n=5)

    def test_negative_counts(self):
        with pytest.raises(ValidationError):
            SequenceType(counts=(-1, 5), n=4)

    def test_risk_budget_range(self):
        with pytest.raises(ValidationError):
            RiskBudget(epsilon=0.0, mu=0.5)
        with pytest.raises(ValidationError):
            RiskBudget(epsilon=0.5, mu=1.5)


class TestSequenceWork(BaseTestCase):

    def test_reference_sequence(self):
        spec = reference_spec()
        alice = ProbDist.of([0.75, 0.25])
        t = SequenceType.from_counts([3, 1])
        assert sequence_work(spec, alice, t) == pytest.approx(0.523248, abs=1e-6)
        assert sequence_work(spec, alice, t) == pytest.approx(3 * math.log(1.5) + math.log(0.5), abs=1e-12)

    def test_type_form_matches_round_sum(self):
        rng = np.random.default_rng(51)
        spec = reference_spec(kt=1.7)
        for _ in range(50):
            alice = random_dist(rng, 2)
            outcomes = rng.integers(0, 2, size=int(rng.integers(1, 40))).tolist()
            t = SequenceType.from_sequence(outcomes, 2)
            assert sequence_work(spec, alice, t) == pytest.approx(outcomes_work(spec, alice, outcomes), abs=1e-12)

    def test_divergence_form(self):
        spec = reference_spec()
        alice = ProbDist.of([0.6, 0.4])
        t = SequenceType.from_counts([7, 3])
        expected = t.n * (kl_divergence(t.lambda_, spec.bob) - kl_divergence(t.lambda_, alice))
        assert sequence_work(spec, alice, t) == pytest.approx(expected, abs=1e-12)

    def test_betting_the_type_earns_its_divergence(self):
        for spec in random_specs(seed=54, count=10, sizes=(2, 3)):
            spec = spec.with_kt(1.7)
            for t in enumerate_types(spec.alphabet_size, 12):
                if min(t.counts) == 0:
                    continue
                expected = spec.kt * t.n * kl_divergence(t.lambda_, spec.bob)
                assert sequence_work(spec, t.lambda_, t) == pytest.approx(expected, abs=1e-10)

    def test_alphabet_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            sequence_work(reference_spec(), ProbDist.of([0.5, 0.5]), SequenceType.from_counts([1, 1, 1]))


class TestTypeProbabilities(BaseTestCase):

    def test_log_multinomial_against_factorials(self):
        for n in range(1, 31):
            for k in range(n + 1):
                assert log_multinomial([k, n - k]) == pytest.approx(math.log(math.comb(n, k)), abs=1e-10)
        counts = [4, 7, 9]
        exact = math.factorial(20) // (math.factorial(4) * math.factorial(7) * math.factorial(9))
        assert log_multinomial(counts) == pytest.approx(math.log(exact), abs=1e-10)

    def test_bound_and_normalization(self):
        prior = ProbDist.of([0.7, 0.3])
        for n in (1, 10, 50, 100):
            total = []
            for t in enumerate_types(2, n):
                probability = type_log_probability(prior, t)
                assert probability.exact <= probability.upper_bound + 1e-12
                total.append(math.exp(probability.exact))
            assert math.fsum(total) == pytest.approx(1.0, abs=1e-10)

    def test_exact_binomial(self):
        probability = type_log_probability(ProbDist.of([0.7, 0.3]), SequenceType.from_counts([16, 4]))
        assert math.exp(probability.exact) == pytest.approx(math.comb(20, 16) * 0.7 ** 16 * 0.3 ** 4, rel=1e-12)

    def test_enumeration(self):
        assert len(enumerate_types(3, 10)) == math.comb(12, 2)
        types = enumerate_types(2, 3)
        assert [t.counts for t in types] == [(0, 3), (1, 2), (2, 1), (3, 0)]

    def test_enumeration_limit(self):
        with mock.patch.object(settings, "ENUMERATION_LIMIT", 100):
            with pytest.raises(TooLargeError):
                enumerate_types(3, 20)


class TestTradeoff(BaseTestCase):

    def test_optimal_bet_end_points(self):
        spec = reference_spec()
        assert optimal_bet(spec, 0.0).weights == pytest.approx(spec.bob.weights)
        assert optimal_bet(spec, 1.0).weights == pytest.approx(spec.prior.weights)
        with pytest.raises(DomainError):
            optimal_bet(spec, 1.2)

    def test_optimal_bet_is_tilted_strategy(self):
        for spec in random_specs(seed=53, count=20):
            for r in (0.0, 0.25, 1.0, 3.0, 19.0):
                tilted = optimal_strategy(spec, RiskProfile(r=r)).weights
                bet = optimal_bet(spec, 1.0 / (1.0 + r))
                assert np.max(np.abs(bet.array - tilted.array)) <= 1e-12

    def test_loose_budget_copies_bob(self):
        budget = solve_mu(reference_spec(), 20, 0.1)
        assert budget.mu == 0.0
        assert work_bound(reference_spec(), 20, budget) == pytest.approx(0.0, abs=1e-15)

    def test_constraint_is_met(self):
        spec = reference_spec()
        for n in (20, 50, 100):
            for epsilon in (0.3, 0.1, 0.03, 1e-3):
                budget = solve_mu(spec, n, epsilon)
                strategy = optimal_bet(spec, budget.mu)
                assert kl_divergence(strategy, spec.prior) <= -math.log(epsilon) / n + 1e-9

    def test_certain_success_needs_prior(self):
        spec = reference_spec()
        budget = solve_mu(spec, 50, 1.0)
        assert budget.mu == pytest.approx(1.0, abs=1e-9)

    def test_work_bound_at_full_tilt(self):
        spec = reference_spec()
        assert work_bound(spec, 10, RiskBudget(epsilon=1.0, mu=1.0)) == pytest.approx(
            10 * kl_divergence(spec.prior, spec.bob), abs=1e-12)
        with pytest.raises(DomainError):
            work_bound(spec, 10, RiskBudget(epsilon=0.5, mu=1.0))

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            solve_mu(reference_spec(), 10, 0.0)
        with pytest.raises(DomainError):
            solve_mu(reference_spec(), 0, 0.5)

    def test_bound_against_exact_tilted_work(self):
        spec = reference_spec()
        for n in (20, 50, 100):
            for epsilon in (0.3, 0.1, 0.03):
                point = frontier_point(spec, n, epsilon)
                tilted_work = spec.kt * n * kl_divergence(point.strategy, spec.bob)
                assert point.work_bound <= tilted_work + 1e-10

    def test_oracle_exceeds_bound_minus_lattice_slack(self):
        spec = reference_spec()
        for n in (20, 50, 100):
            slack = spec.kt * spec.alphabet_size * math.log(n + 1)
            for epsilon in (0.3, 0.1, 0.03):
                point = frontier_point(spec, n, epsilon)
                try:
                    oracle = brute_force_frontier(spec, n, epsilon)
                except NoFeasibleTypeError:
                    assert epsilon == 0.3 or (n, epsilon) == (100, 0.1)
                    continue
                assert oracle.work_bound >= point.work_bound - slack
                assert oracle.success_probability >= epsilon
                assert oracle.constraint_value <= -math.log(epsilon) / n + 1e-9

    def test_oracle_work_grows_as_budget_tightens(self):
        epsilons = (0.5, 0.3, 0.2, 0.1, 0.05, 0.03, 0.01, 1e-3, 1e-6)
        for spec in [reference_spec()] + list(random_specs(seed=55, count=4)):
            for n in (20, 50):
                works = []
                for epsilon in epsilons:
                    try:
                        works.append(brute_force_frontier(spec, n, epsilon).work_bound)
                    except NoFeasibleTypeError:
                        assert not works
                assert works
                assert all(later >= earlier - 1e-9 for earlier, later in zip(works, works[1:]))

    def test_oracle_reference_picks(self):
        spec = reference_spec()
        oracle = brute_force_frontier(spec, 20, 0.1)
        assert oracle.matched_type.counts == (16, 4)
        assert oracle.work_bound == pytest.approx(20 * (math.log(2) + 0.8 * math.log(0.8) + 0.2 * math.log(0.2)),
                                                  abs=1e-12)
        assert brute_force_frontier(spec, 50, 0.1).matched_type.counts == (37, 13)

    def test_nearest_type_distance(self):
        rng = np.random.default_rng(52)
        for _ in range(200):
            size = int(rng.integers(2, 6))
            n = int(rng.integers(1, 200))
            dist = random_dist(rng, size)
            t = nearest_type(dist, n)
            assert t.n == n
            assert np.abs(t.array / n - dist.array).sum() <= size / (2 * n) + 1e-12

    def test_work_distribution_expectation(self):
        spec = reference_spec()
        alice = ProbDist.of([0.6, 0.4])
        outcomes = work_distribution(spec, alice, 12)
        assert math.fsum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-12)
        mean = math.fsum(o.probability * o.work for o in outcomes)
        assert mean == pytest.approx(12 * average_work(spec, alice), abs=1e-10)

    def test_frontier_sweep_rows(self):
        rows = frontier_sweep(reference_spec(), [50, 100], [0.3, 0.1])
        assert [(row.n, row.epsilon) for row in rows] == [(50, 0.3), (50, 0.1), (100, 0.3), (100, 0.1)]
        cells = {(row.n, row.epsilon): row for row in rows}
        assert cells[(50, 0.3)].oracle_work_per_round is None
        assert cells[(100, 0.1)].oracle_success_prob is None
        row = cells[(50, 0.1)]
        assert row.work_bound_per_round <= row.oracle_work_per_round
        assert len(row.strategy) == 2
