import numpy as np
import pytest

from beeopt.ba import BaParams, run_ba
from beeopt.benchmarks import make_benchmark
from beeopt.core import Candidate, RandomSource
from beeopt.hybrid import (
    HybridParams,
    draw_rules,
    hybrid_elite_recruit,
    hybrid_moderate_recruit,
    hybrid_recruits,
    run_hybrid,
)


def _sites(spec, n=8, seed=0):
    X = np.random.default_rng(seed).uniform(-1, 1, (n, spec.dimension))
    return X[np.argsort(spec.evaluate_many(X), kind="stable")]


class TestRules:
    def test_elite_frequencies(self):
        rules = draw_rules((2, 3, 4, 5), 100_000, RandomSource(1))
        freq = np.array([np.mean(rules == r) for r in (2, 3, 4, 5)])
        np.testing.assert_allclose(freq, 0.25, atol=0.01)

    def test_moderate_frequencies(self):
        rules = draw_rules((2, 3), 100_000, RandomSource(2))
        assert abs(np.mean(rules == 2) - 0.5) <= 0.01
        assert set(np.unique(rules).tolist()) == {2, 3}

    def test_single_rule_draws_nothing(self):
        rng = RandomSource(3)
        state = rng.generator.bit_generator.state
        np.testing.assert_array_equal(draw_rules((4,), 5, rng), 4)
        assert rng.generator.bit_generator.state == state

    @pytest.mark.parametrize("kw", [dict(elite_rules=()), dict(moderate_rules=(1,)),
                                    dict(delta_rate=1.5), dict(delta_fixed=0.0),
                                    dict(abc_perturbation="x")])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            HybridParams(**kw)


class TestRecruits:
    def test_rule2_additive(self, forced):
        spec = make_benchmark("sphere", 3)
        x = Candidate(np.array([2.0, 2.0, 2.0]), 12.0)
        v = hybrid_elite_recruit(x, np.vstack([x.position, np.zeros(3)]),
                                 HybridParams(elite_rules=(2,)), forced(rho=0.5), spec)
        np.testing.assert_allclose(v.position, 2.05)

    def test_rule2_zero_rho(self, forced):
        spec = make_benchmark("sphere", 2)
        x = Candidate(np.array([0.3, -0.7]), 0.58)
        v = hybrid_moderate_recruit(x, [x], HybridParams(moderate_rules=(2,)), forced(rho=0.0),
                                    spec)
        np.testing.assert_array_equal(v.position, x.position)

    def test_rule4_zero_fixed_point(self):
        spec = make_benchmark("sphere", 3)
        x = Candidate(np.array([0.0, 1.0, 0.0]), 1.0)
        rng = RandomSource(1)
        for _ in range(20):
            v = hybrid_elite_recruit(x, [x], HybridParams(elite_rules=(4,)), rng, spec)
            assert v.position[0] == 0.0 and v.position[2] == 0.0

    def test_rule3_partner_differs(self):
        # every other site equals the origin; x itself is never its own partner
        spec = make_benchmark("sphere", 2)
        sites = np.zeros((6, 2))
        sites[2] = [1.0, 1.0]
        p = HybridParams(moderate_rules=(3,), abc_perturbation="all")
        R = hybrid_recruits(sites, 2, 500, (3,), p, RandomSource(4), spec.bounds)
        # x + phi * (x - 0) keeps the direction of x; it moves unless phi == 0
        assert np.all(np.abs(R - 1.0) > 0)

    def test_rule5_uses_top_quartile(self):
        spec = make_benchmark("sphere", 1)
        sites = np.arange(8, dtype=float)[:, None]
        p = HybridParams(elite_rules=(5,), phi_half_range=1.0)
        R = hybrid_recruits(sites, 6, 2000, (5,), p, RandomSource(5), spec.bounds)
        # partners come from ranks 0 and 1, so the step is phi * (6 - k) with k in {0, 1}
        assert np.max(np.abs(R - 6.0)) <= 6.0
        assert np.max(np.abs(R - 6.0)) > 5.0

    def test_recruits_inside_bounds(self):
        spec = make_benchmark("rastrigin", 4)
        sites = np.full((10, 4), 5.0)
        sites[1:] -= np.arange(1, 10)[:, None] * 0.5
        R = hybrid_recruits(sites, 0, 400, (2, 3, 4, 5), HybridParams(), RandomSource(6),
                            spec.bounds)
        assert np.all(R <= 5.12) and np.all(R >= -5.12)


class TestEquivalence:
    def test_forced_rule2_is_ba(self):
        spec = make_benchmark("ackley", 5)
        h = run_hybrid(spec, HybridParams(elite_rules=(2,), moderate_rules=(2,)), 30, 11)
        b = run_ba(spec, BaParams(), 30, 11)
        assert h.trace.tobytes() == b.trace.tobytes()

    def test_forced_rule4_is_rev_ba(self):
        spec = make_benchmark("griewank", 5)
        h = run_hybrid(spec, HybridParams(elite_rules=(4,), moderate_rules=(4,), delta_rate=0.7),
                       30, 12)
        b = run_ba(spec, BaParams(variant="revised", delta=0.7), 30, 12)
        assert h.trace.tobytes() == b.trace.tobytes()


class TestRun:
    def test_determinism(self):
        spec = make_benchmark("rastrigin", 5)
        a = run_hybrid(spec, HybridParams(), 20, 9)
        b = run_hybrid(spec, HybridParams(), 20, 9)
        assert a.trace.tobytes() == b.trace.tobytes()
        assert a.algorithm == "hybrid"

    def test_evaluations(self):
        spec = make_benchmark("sphere", 3)
        p = HybridParams()
        rec = run_hybrid(spec, p, 5, 0)
        assert rec.evaluations == p.swarm_size + 5 * p.evaluations_per_generation

    def test_sphere_d5(self):
        spec = make_benchmark("sphere", 5)
        gaps = [run_hybrid(spec, HybridParams(), 200, s).final_gap for s in range(3)]
        assert np.median(gaps) <= 1e-12
