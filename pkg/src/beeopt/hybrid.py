"""Hybrid bees algorithm: the BA generation skeleton with mixed neighbourhood
rules.

Rule numbers:

2. additive BA step ``x + rho * delta_fixed``
3. ABC move against a random other site
4. proportional step ``x + rho * delta_rate * x``
5. ABC move against a site from the top quartile

Every recruit draws its own rule uniformly from ``elite_rules`` (elite sites)
or ``moderate_rules`` (moderate sites). Independent bees are uniform. The ABC
rules follow ``abc_perturbation`` (all coordinates by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .abc import SCOPES, abc_recruits, quartile_partners
from .ba import ColonyLayout, ba_recruits, rev_ba_recruits, run_bees
from .core import Candidate, ObjectiveSpec, RandomSource, uniform_other_index
from .records import RunRecord

__all__ = [
    "RULES",
    "HybridParams",
    "draw_rules",
    "hybrid_recruits",
    "hybrid_elite_recruit",
    "hybrid_moderate_recruit",
    "run_hybrid",
]

RULES = (2, 3, 4, 5)


@dataclass
class HybridParams(ColonyLayout):
    delta_fixed: float = 0.1
    delta_rate: float = 1.0
    phi_half_range: float = 1.0
    elite_rules: Tuple[int, ...] = (2, 3, 4, 5)
    moderate_rules: Tuple[int, ...] = (2, 3)
    abc_perturbation: str = "all"

    def __post_init__(self):
        super().__post_init__()
        if not self.delta_fixed > 0:
            raise ValueError("delta_fixed must be positive")
        if not 0 < self.delta_rate <= 1:
            raise ValueError("delta_rate must lie in (0, 1]")
        if not self.phi_half_range > 0:
            raise ValueError("phi_half_range must be positive")
        if self.abc_perturbation not in SCOPES:
            raise ValueError(f"abc_perturbation must be one of {SCOPES}")
        for name in ("elite_rules", "moderate_rules"):
            rules = tuple(int(r) for r in getattr(self, name))
            if not rules or any(r not in RULES for r in rules):
                raise ValueError(f"{name} must be a non-empty subset of {RULES}")
            setattr(self, name, rules)


def draw_rules(rules, count, rng: RandomSource) -> np.ndarray:
    """Uniform rule choice per recruit; a single allowed rule consumes no draws."""
    rules = np.asarray(rules, dtype=np.intp)
    if rules.size == 1:
        return np.full(count, rules[0], dtype=np.intp)
    return rules[np.asarray(rng.integers(0, rules.size, count)).reshape(count)]


def hybrid_recruits(positions: np.ndarray, s: int, count: int, rules, params: HybridParams,
                    rng: RandomSource, bounds=None) -> np.ndarray:
    """``count`` unevaluated recruits around ranked site ``s``.

    Draws the rule for every recruit first, then the inputs of each rule
    group in rule order (2, 3, 4, 5).
    """
    x = positions[s]
    n_sites = positions.shape[0]
    chosen = draw_rules(rules, count, rng)
    R = np.empty((count, x.size))
    clip = params.clip
    for rule in RULES:
        rows = np.flatnonzero(chosen == rule)
        if rows.size == 0:
            continue
        m = rows.size
        if rule == 2:
            R[rows] = ba_recruits(x, m, params.delta_fixed, rng, bounds, clip)
        elif rule == 4:
            R[rows] = rev_ba_recruits(x, m, params.delta_rate, rng, bounds, clip)
        else:
            u = np.asarray(rng.random(m), dtype=float).reshape(m)
            if n_sites < 2:
                partners = np.full(m, s, dtype=np.intp)
            elif rule == 3:
                partners = uniform_other_index(u, s, n_sites)
            else:
                q = math.ceil(n_sites / 4)
                partners = quartile_partners(u, np.full(m, s, dtype=np.intp), n_sites, q)
            R[rows] = abc_recruits(x, positions[partners], rng, params.phi_half_range,
                                   bounds, clip, params.abc_perturbation)
    return R


def _one(x: Candidate, sites, rules, params, rng, spec, s=None) -> Candidate:
    positions = np.atleast_2d(np.asarray(
        [c.position for c in sites] if not isinstance(sites, np.ndarray) else sites,
        dtype=float))
    if s is None:
        matches = np.flatnonzero(np.all(positions == np.asarray(x.position), axis=1))
        if matches.size:
            s = int(matches[0])
        else:
            positions = np.vstack([positions, x.position])
            s = positions.shape[0] - 1
    pos = hybrid_recruits(positions, s, 1, rules, params, rng, spec.bounds)[0]
    return Candidate(pos, spec.evaluate(pos))


def hybrid_elite_recruit(x: Candidate, sites, params: HybridParams, rng: RandomSource,
                         spec: ObjectiveSpec, site_index=None) -> Candidate:
    """One evaluated elite recruit around ``x`` using a uniformly drawn rule.

    ``sites`` is the ranked site list (candidates or a position array); ``x``
    is located in it unless ``site_index`` is given.
    """
    return _one(x, sites, params.elite_rules, params, rng, spec, site_index)


def hybrid_moderate_recruit(x: Candidate, sites, params: HybridParams, rng: RandomSource,
                            spec: ObjectiveSpec, site_index=None) -> Candidate:
    """One evaluated moderate recruit around ``x`` (rules 2 and 3 by default)."""
    return _one(x, sites, params.moderate_rules, params, rng, spec, site_index)


def run_hybrid(spec: ObjectiveSpec, params: HybridParams, iterations: int, seed) -> RunRecord:
    def recruiters(rng):
        def elite(state, s, count):
            return hybrid_recruits(state.positions, s, count, params.elite_rules, params,
                                   rng, spec.bounds)

        def moderate(state, s, count):
            return hybrid_recruits(state.positions, s, count, params.moderate_rules, params,
                                   rng, spec.bounds)

        return elite, moderate

    return run_bees("hybrid", spec, params, iterations, seed, recruiters)
