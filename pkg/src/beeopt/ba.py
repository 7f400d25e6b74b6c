"""Bees Algorithm (classic additive steps) and its revised proportional-step
variant.

Each generation keeps a ranked list of sites. The best ``elite_count`` sites
each receive ``elite_recruits`` recruits, the next ``moderate_count`` sites
receive ``moderate_recruits``, every site is replaced by the best member of its
own neighbourhood, and ``independent_count`` fresh uniform bees complete the
list.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from .core import Candidate, ObjectiveSpec, RandomSource, random_uniform_matrix
from .records import RunRecord, finish_record

__all__ = [
    "ColonyLayout",
    "BaParams",
    "BaColonyState",
    "ba_neighbor",
    "rev_ba_neighbor",
    "ba_recruits",
    "rev_ba_recruits",
    "init_bees_state",
    "bees_generation",
    "ba_generation",
    "run_bees",
    "run_ba",
]

VARIANTS = ("classic", "revised")
DEFAULT_STEP = 0.1
DEFAULT_RATE = 1.0


@dataclass
class ColonyLayout:
    """Population layout shared by BA-framework colonies."""

    swarm_size: int = 100
    elite_count: int = 5
    moderate_count: int = 20
    elite_recruits: int = 40
    moderate_recruits: int = 10
    independent_count: int = 30
    clip: bool = True

    def __post_init__(self):
        for name in ("swarm_size", "elite_count", "moderate_count", "elite_recruits",
                     "moderate_recruits", "independent_count"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            setattr(self, name, int(value))
        if self.elite_count + self.moderate_count > self.swarm_size:
            raise ValueError("elite_count + moderate_count must not exceed swarm_size")
        if self.elite_count > self.moderate_count:
            warnings.warn("elite_count larger than moderate_count is unusual", stacklevel=3)

    @property
    def site_count(self) -> int:
        return self.elite_count + self.moderate_count + self.independent_count

    @property
    def evaluations_per_generation(self) -> int:
        return (self.elite_count * self.elite_recruits
                + self.moderate_count * self.moderate_recruits
                + self.independent_count)


@dataclass
class BaParams(ColonyLayout):
    """BA tunables.

    ``delta`` is an absolute step for the classic variant (default 0.1) and a
    rate in (0, 1] for the revised one (default 1.0).
    """

    delta: Optional[float] = None
    variant: str = "classic"

    def __post_init__(self):
        super().__post_init__()
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.delta is None:
            self.delta = DEFAULT_STEP if self.variant == "classic" else DEFAULT_RATE
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.variant == "revised" and self.delta > 1:
            raise ValueError("revised BA needs a step rate delta in (0, 1]")


@dataclass
class BaColonyState:
    positions: np.ndarray  # ranked, best first
    values: np.ndarray
    best_position: np.ndarray
    best_value: float
    iteration: int = 0
    evaluations: int = 0

    @property
    def sites(self) -> List[Candidate]:
        return [Candidate(p.copy(), float(v)) for p, v in zip(self.positions, self.values)]

    @property
    def best_so_far(self) -> Candidate:
        return Candidate(self.best_position.copy(), self.best_value)


def ba_recruits(x, count, delta, rng: RandomSource, bounds=None, clip=True):
    """``count`` positions ``x + rho * delta`` with ``rho`` uniform on (-1, 1) per coordinate."""
    x = np.asarray(x, dtype=float)
    rho = np.asarray(rng.uniform(-1.0, 1.0, (count, x.size))).reshape(count, x.size)
    R = x + rho * delta
    if clip and bounds is not None:
        np.clip(R, bounds.lower, bounds.upper, out=R)
    return R


def rev_ba_recruits(x, count, delta_rate, rng: RandomSource, bounds=None, clip=True):
    """``count`` positions ``x + rho * delta_rate * x`` (step proportional to each coordinate)."""
    x = np.asarray(x, dtype=float)
    rho = np.asarray(rng.uniform(-1.0, 1.0, (count, x.size))).reshape(count, x.size)
    R = x + rho * delta_rate * x
    if clip and bounds is not None:
        np.clip(R, bounds.lower, bounds.upper, out=R)
    return R


def ba_neighbor(x: Candidate, delta: float, rng: RandomSource, spec: ObjectiveSpec,
                clip: bool = True) -> Candidate:
    """One evaluated classic BA recruit around ``x``."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    pos = ba_recruits(x.position, 1, delta, rng, spec.bounds, clip)[0]
    return Candidate(pos, spec.evaluate(pos))


def rev_ba_neighbor(x: Candidate, delta_rate: float, rng: RandomSource, spec: ObjectiveSpec,
                    clip: bool = True) -> Candidate:
    """One evaluated revised BA recruit around ``x``."""
    if not 0 < delta_rate <= 1:
        raise ValueError("delta_rate must lie in (0, 1]")
    pos = rev_ba_recruits(x.position, 1, delta_rate, rng, spec.bounds, clip)[0]
    return Candidate(pos, spec.evaluate(pos))


def init_bees_state(spec: ObjectiveSpec, layout: ColonyLayout, rng: RandomSource) -> BaColonyState:
    X = random_uniform_matrix(spec.bounds, layout.swarm_size, rng)
    f = spec.evaluate_many(X)
    order = np.argsort(f, kind="stable")
    X, f = X[order], f[order]
    return BaColonyState(X, f, X[0].copy(), float(f[0]), 0, layout.swarm_size)


# recruit(state, site_index, count) -> (count, D) array of unevaluated positions
Recruiter = Callable[[BaColonyState, int, int], np.ndarray]


def bees_generation(state: BaColonyState, spec: ObjectiveSpec, layout: ColonyLayout,
                    rng: RandomSource, elite_recruit: Recruiter,
                    moderate_recruit: Recruiter) -> BaColonyState:
    """One BA-framework generation with pluggable neighbourhood rules.

    Draw order: recruits site by site (elites, then moderates), then the
    independent bees. All new positions are evaluated in one batch.
    """
    ne, nm = layout.elite_count, layout.moderate_count
    n_sites = ne + nm
    if state.positions.shape[0] < n_sites:
        raise ValueError("state holds fewer sites than elite_count + moderate_count")
    batches = []
    for s in range(n_sites):
        if s < ne:
            batches.append(elite_recruit(state, s, layout.elite_recruits))
        else:
            batches.append(moderate_recruit(state, s, layout.moderate_recruits))
    fresh = random_uniform_matrix(spec.bounds, layout.independent_count, rng)
    pool = np.vstack(batches + [fresh])
    vals = spec.evaluate_many(pool)

    D = spec.dimension
    X = np.empty((layout.site_count, D))
    f = np.empty(layout.site_count)
    start = 0
    for s, batch in enumerate(batches):
        stop = start + batch.shape[0]
        b = start + int(np.argmin(vals[start:stop]))
        if vals[b] < state.values[s]:
            X[s], f[s] = pool[b], vals[b]
        else:
            X[s], f[s] = state.positions[s], state.values[s]
        start = stop
    X[n_sites:] = fresh
    f[n_sites:] = vals[start:]

    order = np.argsort(f, kind="stable")
    X, f = X[order], f[order]
    best_position, best_value = state.best_position, state.best_value
    if f[0] < best_value:
        best_position, best_value = X[0].copy(), float(f[0])
    return BaColonyState(X, f, best_position, best_value, state.iteration + 1,
                         state.evaluations + pool.shape[0])


def _ba_recruiter(spec: ObjectiveSpec, params: BaParams, rng: RandomSource) -> Recruiter:
    make = ba_recruits if params.variant == "classic" else rev_ba_recruits

    def recruit(state, s, count):
        return make(state.positions[s], count, params.delta, rng, spec.bounds, params.clip)

    return recruit


def ba_generation(state: BaColonyState, spec: ObjectiveSpec, params: BaParams,
                  rng: RandomSource) -> BaColonyState:
    recruit = _ba_recruiter(spec, params, rng)
    return bees_generation(state, spec, params, rng, recruit, recruit)


def _as_rng(seed) -> RandomSource:
    return seed if isinstance(seed, RandomSource) else RandomSource(seed)


def run_bees(algorithm, spec, layout, iterations, seed, make_recruiters) -> RunRecord:
    """Shared driver for BA-framework colonies."""
    iterations = int(iterations)
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    rng = _as_rng(seed)
    t0 = time.perf_counter()
    state = init_bees_state(spec, layout, rng)
    elite, moderate = make_recruiters(rng)
    trace = np.empty(iterations + 1)
    trace[0] = state.best_value
    for t in range(1, iterations + 1):
        state = bees_generation(state, spec, layout, rng, elite, moderate)
        trace[t] = state.best_value
    return finish_record(algorithm, spec, iterations, rng.seed, trace, state.best_value,
                         state.best_position, state.evaluations, time.perf_counter() - t0)


def run_ba(spec: ObjectiveSpec, params: BaParams, iterations: int, seed) -> RunRecord:
    """Run classic or revised BA for ``iterations`` generations from ``seed``."""
    algorithm = "ba" if params.variant == "classic" else "rev-ba"

    def recruiters(rng):
        r = _ba_recruiter(spec, params, rng)
        return r, r

    return run_bees(algorithm, spec, params, iterations, seed, recruiters)
