import math
from unittest import mock

import numpy as np
import pytest
from pydantic import ValidationError

from config.base import get_settings
from core.errors import ZeroStrategyWeightError
from core.finite import frontier_point, type_log_probability
from core.montecarlo import sample_counts, simulate, simulate_kelly
from core.risk import certainty_equivalent, expected_work_optimal
from models.betting import BettingSpec
from models.distribution import ProbDist
from models.risk import RiskProfile
from models.simulation import SimConfig
from tests.base import BaseTestCase, EXPECTED_WORK_R1_REFERENCE, TILTED_R1_REFERENCE, logger, reference_spec

settings = get_settings()


def reference_config(**overrides) -> SimConfig:
    values = {"seed": 7, "rounds": 1, "trials": 10_000, "spec": reference_spec()}
    values.update(overrides)
    return SimConfig(**values)


class TestSimConfig(BaseTestCase):

    def test_target_type_from_list(self):
        config = SimConfig.model_validate({"rounds": 4, "trials": 10, "target_type": [3, 1],
                                           "spec": {"prior": [0.7, 0.3], "bob": [0.5, 0.5]}})
        assert config.target_type.counts == (3, 1)
        assert config.seed == settings.DEFAULT_SEED

    def test_target_length_must_match_rounds(self):
        with pytest.raises(ValidationError):
            reference_config(rounds=5, target_type=[3, 1])

    def test_strategy_alphabet(self):
        with pytest.raises(ValidationError):
            reference_config(strategy=ProbDist.uniform(3))

    def test_seed_range(self):
        with pytest.raises(ValidationError):
            reference_config(seed=-1)


class TestSampling(BaseTestCase):

    def test_counts_shape(self):
        counts = sample_counts(ProbDist.of([0.2, 0.3, 0.5]), rounds=6, trials=100, seed=3)
        assert counts.shape == (100, 3)
        assert np.all(counts.sum(axis=1) == 6)

    def test_zero_weight_never_drawn(self):
        counts = sample_counts(ProbDist.of([0.5, 0.0, 0.5]), rounds=50, trials=200, seed=4)
        assert np.all(counts[:, 1] == 0)

    def test_independent_of_workers(self):
        prior = ProbDist.of([0.7, 0.3])
        with mock.patch.object(settings, "SIM_CHUNK_DRAWS", 64):
            single = sample_counts(prior, rounds=8, trials=5000, seed=5)
            with mock.patch.object(settings, "SIM_WORKERS", 4):
                threaded = sample_counts(prior, rounds=8, trials=5000, seed=5)
        assert np.array_equal(single, threaded)

    def test_independent_of_chunk_draws(self):
        prior = ProbDist.of([0.7, 0.3])
        default = sample_counts(prior, rounds=8, trials=3000, seed=5)
        for chunk_draws in (1, 64, 8 * 5000):
            with mock.patch.object(settings, "SIM_CHUNK_DRAWS", chunk_draws):
                assert np.array_equal(sample_counts(prior, rounds=8, trials=3000, seed=5), default)

    def test_trial_depends_only_on_seed_and_index(self):
        prior = ProbDist.of([0.2, 0.3, 0.5])
        longer = sample_counts(prior, rounds=5, trials=2500, seed=9)
        assert np.array_equal(sample_counts(prior, rounds=5, trials=700, seed=9), longer[:700])
        assert not np.array_equal(sample_counts(prior, rounds=5, trials=700, seed=10), longer[:700])


class TestSimulate(BaseTestCase):

    def test_reproducible(self):
        config = reference_config(rounds=5, trials=2000)
        first = simulate(config, RiskProfile(r=1.0))
        second = simulate(config, RiskProfile(r=1.0))
        assert first.model_dump() == second.model_dump()

    def test_seeds_differ(self):
        first = simulate(reference_config(seed=1), RiskProfile(r=1.0))
        second = simulate(reference_config(seed=2), RiskProfile(r=1.0))
        assert first.mean_work != second.mean_work

    def test_copying_bob_extracts_nothing(self):
        spec = reference_spec()
        report = simulate(reference_config(strategy=spec.bob, rounds=3), RiskProfile(r=2.0))
        assert report.mean_work == 0.0
        assert report.mean_work_se == 0.0
        assert report.empirical_ce == 0.0

    def test_default_strategy_is_tilted(self):
        report = simulate(reference_config(trials=10), RiskProfile(r=1.0))
        assert report.strategy == pytest.approx(list(TILTED_R1_REFERENCE), abs=1e-12)

    def test_histogram(self):
        report = simulate(reference_config(rounds=3, trials=500), RiskProfile(r=0.0))
        assert all(len(row) == 3 for row in report.type_histogram)
        assert all(row[0] + row[1] == 3 for row in report.type_histogram)
        assert math.fsum(row[-1] for row in report.type_histogram) == pytest.approx(1.0, abs=1e-12)
        assert report.success_rate is None

    def test_jensen_direction(self):
        for seed in range(5):
            report = simulate(reference_config(seed=seed, rounds=4, trials=2000), RiskProfile(r=3.0))
            assert report.empirical_ce <= report.mean_work_per_round + 1e-12

    def test_zero_strategy_weight(self):
        with pytest.raises(ZeroStrategyWeightError):
            simulate(reference_config(strategy=ProbDist.of([1.0, 0.0])), RiskProfile(r=0.0))

    def test_success_rate_matches_multinomial(self):
        spec = reference_spec()
        n = 20
        target = frontier_point(spec, n, 0.1).matched_type
        report = simulate(reference_config(rounds=n, trials=100_000, target_type=list(target.counts)),
                          RiskProfile(r=0.0))
        exact = math.exp(type_log_probability(spec.prior, target).exact)
        se = math.sqrt(exact * (1.0 - exact) / report.trials)
        assert report.success_count == round(report.success_rate * report.trials)
        assert abs(report.success_rate - exact) <= 3.0 * se

    def test_mean_work_coverage_over_seeds(self):
        spec = reference_spec()
        profile = RiskProfile(r=1.0)
        expected = expected_work_optimal(spec, profile)
        misses = 0
        for seed in range(20):
            report = simulate(reference_config(seed=seed, trials=20_000), profile)
            if abs(report.mean_work - expected) > 3.0 * report.mean_work_se:
                misses += 1
        if misses == 1:
            logger.warning("mean work outside 3 standard errors for one of 20 seeds")
        assert misses <= 1

    @pytest.mark.slow
    def test_large_sample_convergence(self):
        spec = reference_spec()
        for r in (0.0, 1.0):
            profile = RiskProfile(r=r)
            config = reference_config(seed=2024, trials=1_000_000)
            report = simulate(config, profile)
            assert abs(report.mean_work - expected_work_optimal(spec, profile)) <= 3.0 * report.mean_work_se
            assert abs(report.empirical_ce - certainty_equivalent(spec, profile)) <= 3.0 * report.empirical_ce_se
            assert simulate(config, profile).model_dump() == report.model_dump()
        assert expected_work_optimal(spec, RiskProfile(r=1.0)) == pytest.approx(EXPECTED_WORK_R1_REFERENCE, abs=1e-12)


class TestSimulateKelly(BaseTestCase):

    def test_law_of_large_numbers(self):
        race = BettingSpec(prior=ProbDist.of([0.7, 0.3]), odds=(2.0, 2.0), fractions=ProbDist.of([0.6, 0.4]))
        report = simulate_kelly(race, rounds=10_000, trials=100, seed=8)
        assert abs(report.mean_log_growth - report.expected_log_growth) <= 3.0 * report.mean_log_growth_se

    def test_reproducible(self):
        race = BettingSpec(prior=ProbDist.of([0.7, 0.3]), odds=(2.0, 2.0), fractions=ProbDist.of([0.7, 0.3]))
        assert simulate_kelly(race, 50, 200, seed=9) == simulate_kelly(race, 50, 200, seed=9)
