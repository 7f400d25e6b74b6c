"""Invariants that must hold for every colony, checked on generated inputs."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from beeopt.abc import AbcParams, abc_iteration, abc_neighbor, employed_phase, init_abc_state
from beeopt.ba import BaParams, bees_generation, init_bees_state, _ba_recruiter
from beeopt.benchmarks import BENCHMARK_IDS, BENCHMARKS, make_benchmark
from beeopt.core import Candidate, RandomSource
from beeopt.harness import ALGORITHM_IDS, ExperimentConfig, make_params, run_replication
from beeopt.hybrid import HybridParams, hybrid_recruits

from conftest import constant_objective

SMALL = dict(swarm_size=20, elite_count=2, moderate_count=4, elite_recruits=6,
             moderate_recruits=3, independent_count=6)
SETTINGS = settings(max_examples=15, deadline=None)

algorithms = st.sampled_from(ALGORITHM_IDS)
benchmarks = st.sampled_from(BENCHMARK_IDS)
seeds = st.integers(0, 2**31 - 1)


@SETTINGS
@given(algo=algorithms, bench=benchmarks, seed=seeds, D=st.integers(2, 6))
def test_best_so_far_monotone(algo, bench, seed, D):
    rec = run_replication(ExperimentConfig(algo, bench, D, 12, base_seed=seed), 0)
    assert np.all(np.diff(rec.trace) <= 0)
    assert rec.final_value == rec.trace[-1]
    assert len(rec.trace) == 13


@SETTINGS
@given(algo=algorithms, bench=benchmarks, seed=seeds)
def test_seed_determinism(algo, bench, seed):
    c = ExperimentConfig(algo, bench, 3, 6, base_seed=seed)
    a, b = run_replication(c, 0), run_replication(c, 0)
    assert a.trace.tobytes() == b.trace.tobytes()
    assert a.best_position.tobytes() == b.best_position.tobytes()


def _bees_states(spec, layout, rng, recruiters, steps):
    state = init_bees_state(spec, layout, rng)
    elite, moderate = recruiters
    yield state
    for _ in range(steps):
        state = bees_generation(state, spec, layout, rng, elite, moderate)
        yield state


@SETTINGS
@given(bench=benchmarks, seed=seeds, variant=st.sampled_from(["classic", "revised"]))
def test_ba_positions_in_bounds(bench, seed, variant):
    spec = make_benchmark(bench, 3)
    p = BaParams(variant=variant, delta=1.0 if variant == "revised" else 50.0, **SMALL)
    rng = RandomSource(seed)
    r = _ba_recruiter(spec, p, rng)
    for state in _bees_states(spec, p, rng, (r, r), 8):
        assert np.all(state.positions >= spec.bounds.lower)
        assert np.all(state.positions <= spec.bounds.upper)


@SETTINGS
@given(bench=benchmarks, seed=seeds)
def test_hybrid_positions_in_bounds(bench, seed):
    spec = make_benchmark(bench, 3)
    p = HybridParams(delta_fixed=50.0, phi_half_range=3.0, **SMALL)
    rng = RandomSource(seed)

    def elite(state, s, count):
        return hybrid_recruits(state.positions, s, count, p.elite_rules, p, rng, spec.bounds)

    def moderate(state, s, count):
        return hybrid_recruits(state.positions, s, count, p.moderate_rules, p, rng, spec.bounds)

    for state in _bees_states(spec, p, rng, (elite, moderate), 8):
        assert np.all(state.positions >= spec.bounds.lower)
        assert np.all(state.positions <= spec.bounds.upper)


@SETTINGS
@given(bench=benchmarks, seed=seeds, variant=st.sampled_from(["classic", "revised"]),
       scope=st.sampled_from(["single", "all"]))
def test_abc_positions_in_bounds(bench, seed, variant, scope):
    spec = make_benchmark(bench, 3)
    p = AbcParams(source_count=12, trial_limit=4, phi_half_range=3.0, variant=variant,
                  perturbation=scope)
    rng = RandomSource(seed)
    state = init_abc_state(spec, p, rng)
    for _ in range(10):
        state = abc_iteration(state, spec, p, rng)
        assert np.all(state.positions >= spec.bounds.lower)
        assert np.all(state.positions <= spec.bounds.upper)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, D=st.integers(1, 20))
def test_abc_neighbor_single_scope_changes_one_coordinate(seed, D):
    spec = make_benchmark("griewank", D)
    gen = np.random.default_rng(seed)
    x = Candidate(gen.uniform(-600, 600, D), 0.0)
    k = Candidate(gen.uniform(-600, 600, D), 0.0)
    v = abc_neighbor(x, k, RandomSource(seed), spec, scope="single")
    assert np.count_nonzero(v.position != x.position) <= 1


@settings(max_examples=50, deadline=None)
@given(seed=seeds, D=st.integers(1, 20), a=st.floats(0.1, 2.0))
def test_abc_neighbor_step_bounded_by_partner_distance(seed, D, a):
    spec = make_benchmark("griewank", D)
    gen = np.random.default_rng(seed)
    x = Candidate(gen.uniform(-600, 600, D), 0.0)
    k = Candidate(gen.uniform(-600, 600, D), 0.0)
    v = abc_neighbor(x, k, RandomSource(seed), spec, phi_half_range=a, clip=False)
    step = np.abs(v.position - x.position)
    assert np.all(step <= a * np.abs(x.position - k.position) * (1 + 1e-12))


@settings(max_examples=10, deadline=None)
@given(L=st.integers(1, 12), seed=seeds, scope=st.sampled_from(["single", "all"]))
def test_trial_counter_under_constant_objective(L, seed, scope):
    spec = constant_objective(3)
    p = AbcParams(source_count=8, trial_limit=L, perturbation=scope)
    rng = RandomSource(seed)
    state = init_abc_state(spec, p, rng)
    initial = state.positions.copy()
    for t in range(1, L):
        state = abc_iteration(state, spec, p, rng)
        np.testing.assert_array_equal(state.trials, t)
        np.testing.assert_array_equal(state.positions, initial)
    # iteration L: the employed phase brings every counter to L, the scouts then fire
    employed_phase(state, spec, p, rng)
    np.testing.assert_array_equal(state.trials, L)
    rng = RandomSource(seed)
    state = init_abc_state(spec, p, rng)
    for _ in range(L):
        state = abc_iteration(state, spec, p, rng)
    np.testing.assert_array_equal(state.trials, 0)
    assert not np.any(np.all(state.positions == initial, axis=1))


@settings(max_examples=10, deadline=None)
@given(algo=algorithms, seed=seeds)
def test_typed_params_round_trip(algo, seed):
    p = make_params(algo, {"clip": "true"})
    assert p.clip is True
    assert make_params(algo) == make_params(algo, {})


def test_benchmark_ranges_contain_optimum():
    for b in BENCHMARK_IDS:
        spec = make_benchmark(b, 4)
        assert spec.bounds.contains(spec.known_optimum_point)
        assert BENCHMARKS[b].low < 0 < BENCHMARKS[b].high
