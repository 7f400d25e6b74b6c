"""Artificial Bee Colony (classic) and the revised pooled-selection variant.

Classic cycle: employed phase (every source once, random partner), onlooker
phase (``source_count`` fitness-proportional picks), scout phase (sources whose
trial counter reached ``trial_limit`` are re-seeded uniformly).

The trial counter of a source counts consecutive iterations without
improvement: a failed employed attempt adds one, any accepted move resets it,
and failed onlooker attempts leave it alone.

Revised cycle: employed and onlooker bees only *propose* positions, with
partners drawn from the top quartile of the ranked sources. The next
generation keeps the best ``ceil(revised_elite_fraction * N)`` members of the
pool (old sources plus all proposals) and fills the rest by fitness-
proportional roulette without replacement.

A move ``x + phi * (x - partner)`` perturbs every coordinate with its own
coefficient by default; ``perturbation="single"`` selects the one-coordinate
form instead.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import List

import numpy as np

from . import kernels
from .core import (
    Candidate,
    ObjectiveSpec,
    RandomSource,
    abc_fitness,
    random_uniform_matrix,
    roulette_indices,
    selection_probabilities,
    uniform_other_index,
)
from .records import RunRecord, finish_record

__all__ = [
    "AbcParams",
    "AbcColonyState",
    "init_abc_state",
    "abc_neighbor",
    "abc_recruits",
    "greedy_update",
    "employed_phase",
    "onlooker_phase",
    "scout_phase",
    "quartile_partners",
    "rev_abc_neighbor",
    "rev_abc_proposals",
    "rev_abc_next_generation",
    "abc_iteration",
    "run_abc",
]

VARIANTS = ("classic", "revised")
SCOPES = ("single", "all")


def _check_scope(scope):
    if scope not in SCOPES:
        raise ValueError(f"perturbation must be one of {SCOPES}, got {scope!r}")


@dataclass
class AbcParams:
    source_count: int = 100
    trial_limit: int = 200
    phi_half_range: float = 1.0
    variant: str = "classic"
    revised_elite_fraction: float = 0.25
    clip: bool = True
    perturbation: str = "all"

    def __post_init__(self):
        for name in ("source_count", "trial_limit"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            setattr(self, name, int(value))
        if not self.phi_half_range > 0:
            raise ValueError("phi_half_range must be positive")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        _check_scope(self.perturbation)
        if not 0 < self.revised_elite_fraction < 1:
            raise ValueError("revised_elite_fraction must lie in (0, 1)")

    @property
    def elite_keep(self) -> int:
        return math.ceil(self.revised_elite_fraction * self.source_count)


@dataclass
class AbcColonyState:
    positions: np.ndarray
    values: np.ndarray
    trials: np.ndarray  # int64
    best_position: np.ndarray
    best_value: float
    iteration: int = 0
    evaluations: int = 0

    @property
    def sources(self) -> List[Candidate]:
        F = abc_fitness(self.values)
        return [Candidate(p.copy(), float(v), float(fit))
                for p, v, fit in zip(self.positions, self.values, np.atleast_1d(F))]

    @property
    def best_so_far(self) -> Candidate:
        return Candidate(self.best_position.copy(), self.best_value)

    def refresh_best(self):
        i = int(np.argmin(self.values))
        if self.values[i] < self.best_value:
            self.best_value = float(self.values[i])
            self.best_position = self.positions[i].copy()
        return self


def init_abc_state(spec: ObjectiveSpec, params: AbcParams, rng: RandomSource) -> AbcColonyState:
    X = random_uniform_matrix(spec.bounds, params.source_count, rng)
    f = spec.evaluate_many(X)
    i = int(np.argmin(f))
    return AbcColonyState(X, f, np.zeros(params.source_count, dtype=np.int64),
                          X[i].copy(), float(f[i]), 0, params.source_count)


def abc_recruits(x, partners, rng: RandomSource, phi_half_range=1.0, bounds=None, clip=True,
                 scope="all"):
    """One move ``x + phi * (x - partner)`` per partner row.

    ``scope="all"`` draws an independent coefficient for every coordinate;
    ``scope="single"`` changes one random coordinate only (draws the
    coordinates first, then the coefficients).
    """
    x = np.asarray(x, dtype=float)
    P = np.atleast_2d(np.asarray(partners, dtype=float))
    n = P.shape[0]
    if scope == "all":
        phi = np.asarray(rng.uniform(-phi_half_range, phi_half_range, (n, x.size)),
                         dtype=float).reshape(n, x.size)
        R = x + phi * (x - P)
        if clip and bounds is not None:
            np.clip(R, bounds.lower, bounds.upper, out=R)
        return R
    _check_scope(scope)
    j = np.asarray(rng.integers(0, x.size, n)).reshape(n)
    phi = np.asarray(rng.uniform(-phi_half_range, phi_half_range, n), dtype=float).reshape(n)
    rows = np.arange(n)
    R = np.tile(x, (n, 1))
    vj = x[j] + phi * (x[j] - P[rows, j])
    if clip and bounds is not None:
        vj = np.clip(vj, bounds.lower[j], bounds.upper[j])
    R[rows, j] = vj
    return R


def abc_neighbor(x_i: Candidate, x_k: Candidate, rng: RandomSource, spec: ObjectiveSpec,
                 phi_half_range: float = 1.0, clip: bool = True,
                 scope: str = "all") -> Candidate:
    """Evaluated ABC move of ``x_i`` relative to partner ``x_k``.

    Every coordinate moves unless ``scope="single"``; see :func:`abc_recruits`.
    """
    x = np.asarray(x_i.position, dtype=float)
    k = np.asarray(x_k.position, dtype=float)
    if x.shape != k.shape:
        raise ValueError("x_i and x_k must have the same dimension")
    v = abc_recruits(x, k, rng, phi_half_range, spec.bounds, clip, scope)[0]
    return Candidate(v, spec.evaluate(v))


def greedy_update(state: AbcColonyState, i: int, v: Candidate,
                  count_failure: bool = True) -> AbcColonyState:
    """Adopt ``v`` at source ``i`` only if strictly better; otherwise bump its trial counter."""
    n = state.values.shape[0]
    if not 0 <= i < n:
        raise IndexError(f"source index {i} out of range for {n} sources")
    if v.value < state.values[i]:
        state.positions[i] = v.position
        state.values[i] = v.value
        state.trials[i] = 0
        if v.value < state.best_value:
            state.best_value = float(v.value)
            state.best_position = np.array(v.position, dtype=float)
    elif count_failure:
        state.trials[i] += 1
    return state


def _sweep_inputs(state, spec, params, rng, sources):
    n = len(sources)
    partners = uniform_other_index(rng.random(n), sources, state.values.shape[0])
    a = params.phi_half_range
    if params.perturbation == "all":
        return partners, None, rng.uniform(-a, a, (n, spec.dimension))
    return partners, rng.integers(0, spec.dimension, n), rng.uniform(-a, a, n)


def _sweep(state, spec, params, sources, partners, dims, phis, count_failures):
    bounds = spec.bounds
    code = -1 if spec.kernel_code is None else spec.kernel_code
    func = None if spec.kernel_code is not None else spec.function
    sources = np.asarray(sources, dtype=np.intp)
    partners = np.asarray(partners, dtype=np.intp)
    if dims is None:
        phis = np.ascontiguousarray(np.reshape(phis, (len(sources), spec.dimension)), dtype=float)
        kernels.abc_sweep_full(code, state.positions, state.values, state.trials, sources,
                               partners, phis, bounds.lower, bounds.upper, bool(params.clip),
                               bool(count_failures), func)
    else:
        kernels.abc_sweep(code, state.positions, state.values, state.trials, sources,
                          partners, np.asarray(dims, dtype=np.intp),
                          np.ascontiguousarray(phis, dtype=float), bounds.lower,
                          bounds.upper, bool(params.clip), bool(count_failures), func)
    state.evaluations += len(sources)
    state.refresh_best()


def employed_phase(state: AbcColonyState, spec: ObjectiveSpec, params: AbcParams,
                   rng: RandomSource) -> AbcColonyState:
    """Perturb every source once, in index order, against a uniformly chosen other source."""
    n = state.values.shape[0]
    if n < 2:
        return state
    sources = np.arange(n)
    partners, dims, phis = _sweep_inputs(state, spec, params, rng, sources)
    _sweep(state, spec, params, sources, partners, dims, phis, count_failures=True)
    return state


def onlooker_phase(state: AbcColonyState, spec: ObjectiveSpec, params: AbcParams,
                   rng: RandomSource) -> AbcColonyState:
    """``n`` roulette picks over nectar amounts fixed at phase start, each followed by a
    greedy ABC move."""
    n = state.values.shape[0]
    if n < 2:
        return state
    p = selection_probabilities(abc_fitness(state.values))
    sources = roulette_indices(p, rng.random(n))
    partners, dims, phis = _sweep_inputs(state, spec, params, rng, sources)
    _sweep(state, spec, params, sources, partners, dims, phis, count_failures=False)
    return state


def scout_phase(state: AbcColonyState, spec: ObjectiveSpec, params: AbcParams,
                rng: RandomSource, protect_best: bool = False) -> AbcColonyState:
    """Re-seed every source whose trial counter reached the limit.

    ``protect_best`` exempts the current best source (used by the revised variant).
    """
    exhausted = np.flatnonzero(state.trials >= params.trial_limit)
    if protect_best and exhausted.size:
        exhausted = exhausted[exhausted != int(np.argmin(state.values))]
    if exhausted.size == 0:
        return state
    X = random_uniform_matrix(spec.bounds, exhausted.size, rng)
    state.positions[exhausted] = X
    state.values[exhausted] = spec.evaluate_many(X)
    state.trials[exhausted] = 0
    state.evaluations += exhausted.size
    state.refresh_best()
    return state


def quartile_partners(draws, sources, n: int, q: int) -> np.ndarray:
    """Partner indices drawn from the ``q`` best-ranked sources (indices ``0..q-1``).

    A source that is itself in the quartile never partners with itself; if it
    is the only member, the partner comes uniformly from the remaining sources.
    """
    if q < 1 or n < 1:
        raise ValueError("top quartile is empty")
    draws = np.asarray(draws, dtype=float)
    sources = np.asarray(sources, dtype=np.intp)
    out = np.minimum(np.floor(draws * q).astype(np.intp), q - 1)
    inside = sources < q
    if q > 1:
        out[inside] = uniform_other_index(draws[inside], sources[inside], q)
    elif n > 1:
        out[inside] = uniform_other_index(draws[inside], sources[inside], n)
    return out


def rev_abc_neighbor(i: int, positions, rng: RandomSource, spec: ObjectiveSpec,
                     phi_half_range: float = 1.0, clip: bool = True,
                     scope: str = "all") -> Candidate:
    """Evaluated ABC move of ranked source ``i`` with a partner from the top quartile.

    ``positions`` must be ranked best first.
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    n = positions.shape[0]
    q = math.ceil(n / 4)
    k = int(quartile_partners(np.atleast_1d(rng.random()), np.array([i]), n, q)[0])
    v = abc_recruits(positions[i], positions[k], rng, phi_half_range, spec.bounds, clip,
                     scope)[0]
    return Candidate(v, spec.evaluate(v))


def _moves(X, sources, partners, rng, a, bounds, clip, scope):
    n = len(sources)
    D = X.shape[1]
    V = X[sources].copy()
    if scope == "all":
        phi = np.asarray(rng.uniform(-a, a, (n, D)), dtype=float).reshape(n, D)
        V += phi * (V - X[partners])
        if clip:
            np.clip(V, bounds.lower, bounds.upper, out=V)
        return V
    j = np.asarray(rng.integers(0, D, n)).reshape(n)
    phi = np.asarray(rng.uniform(-a, a, n), dtype=float).reshape(n)
    rows = np.arange(n)
    vj = V[rows, j] + phi * (V[rows, j] - X[partners, j])
    if clip:
        vj = np.clip(vj, bounds.lower[j], bounds.upper[j])
    V[rows, j] = vj
    return V


def rev_abc_proposals(state: AbcColonyState, spec: ObjectiveSpec, params: AbcParams,
                      rng: RandomSource) -> np.ndarray:
    """Revised employed + onlooker proposals (``2n`` positions, unevaluated).

    ``state`` must be ranked. Employed bees work every source in order,
    onlookers pick sources uniformly; partners come from the top quartile.
    """
    n = state.values.shape[0]
    q = math.ceil(n / 4)
    employed = np.arange(n)
    onlookers = np.asarray(rng.integers(0, n, n)).reshape(n)
    sources = np.concatenate([employed, onlookers])
    partners = quartile_partners(rng.random(2 * n), sources, n, q)
    return _moves(state.positions, sources, partners, rng, params.phi_half_range,
                  spec.bounds, params.clip, params.perturbation)


def _roulette_without_replacement(weights, m, rng):
    # exponential-key form of successive roulette draws
    keys = np.asarray(rng.exponential(len(weights)), dtype=float) / weights
    return np.argsort(keys, kind="stable")[:m]


def rev_abc_next_generation(old_positions, old_values, old_trials, new_positions, new_values,
                            params: AbcParams, rng: RandomSource):
    """Assemble the next revised-ABC generation from old sources plus proposals.

    Returns ``(positions, values, trials)``. The top-ranked share of the pool is
    kept outright, the rest is drawn by nectar-proportional roulette without
    replacement. Exact duplicates are dropped first (earliest copy wins, so old
    sources take precedence over identical proposals). Surviving old sources get one more trial; promoted proposals
    start at zero.
    """
    n = params.source_count
    pool_X = np.vstack([old_positions, new_positions])
    pool_f = np.concatenate([old_values, new_values])
    n_old = len(old_values)
    if pool_f.size < n:
        raise ValueError(f"pool of {pool_f.size} candidates cannot fill {n} sources")
    # the pool is a set: a proposal identical to an earlier member is dropped
    _, first = np.unique(pool_X, axis=0, return_index=True)
    unique = np.sort(first)
    if unique.size < n:
        unique = np.arange(pool_f.size)
    order = unique[np.argsort(pool_f[unique], kind="stable")]
    keep = min(params.elite_keep, n)
    top = order[:keep]
    rest = order[keep:]
    if n > keep:
        w = abc_fitness(pool_f[rest])
        picked = rest[_roulette_without_replacement(np.atleast_1d(w), n - keep, rng)]
        chosen = np.concatenate([top, picked])
    else:
        chosen = top
    trials = np.zeros(n, dtype=np.int64)
    survived = chosen < n_old
    trials[survived] = np.asarray(old_trials)[chosen[survived]] + 1
    return pool_X[chosen].copy(), pool_f[chosen].copy(), trials


def abc_iteration(state: AbcColonyState, spec: ObjectiveSpec, params: AbcParams,
                  rng: RandomSource) -> AbcColonyState:
    if params.variant == "classic":
        employed_phase(state, spec, params, rng)
        onlooker_phase(state, spec, params, rng)
        scout_phase(state, spec, params, rng)
    else:
        order = np.argsort(state.values, kind="stable")
        ranked = AbcColonyState(state.positions[order], state.values[order],
                                state.trials[order], state.best_position, state.best_value,
                                state.iteration, state.evaluations)
        V = rev_abc_proposals(ranked, spec, params, rng)
        fv = spec.evaluate_many(V)
        X, f, trials = rev_abc_next_generation(ranked.positions, ranked.values, ranked.trials,
                                               V, fv, params, rng)
        state = AbcColonyState(X, f, trials, state.best_position, state.best_value,
                               state.iteration, state.evaluations + V.shape[0])
        state.refresh_best()
        scout_phase(state, spec, params, rng, protect_best=True)
    state.iteration += 1
    return state


def run_abc(spec: ObjectiveSpec, params: AbcParams, iterations: int, seed) -> RunRecord:
    """Run classic or revised ABC for ``iterations`` cycles from ``seed``."""
    iterations = int(iterations)
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    rng = seed if isinstance(seed, RandomSource) else RandomSource(seed)
    t0 = time.perf_counter()
    state = init_abc_state(spec, params, rng)
    trace = np.empty(iterations + 1)
    trace[0] = state.best_value
    for t in range(1, iterations + 1):
        state = abc_iteration(state, spec, params, rng)
        trace[t] = state.best_value
    algorithm = "abc" if params.variant == "classic" else "rev-abc"
    return finish_record(algorithm, spec, iterations, rng.seed, trace, state.best_value,
                         state.best_position, state.evaluations, time.perf_counter() - t0)
