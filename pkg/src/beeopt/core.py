"""Shared domain types, random-source contract, bounds handling and the ABC
fitness transform used by every colony."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Bounds",
    "Candidate",
    "ObjectiveSpec",
    "RandomSource",
    "random_uniform_vector",
    "random_uniform_matrix",
    "clip_to_bounds",
    "abc_fitness",
    "selection_probabilities",
    "roulette_pick",
    "roulette_indices",
    "uniform_other_index",
]


class Bounds:
    """Box bounds, one ``[lower, upper]`` interval per dimension."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper):
        lower = np.atleast_1d(np.asarray(lower, dtype=float)).copy()
        upper = np.atleast_1d(np.asarray(upper, dtype=float)).copy()
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D and of equal length")
        if lower.size < 1:
            raise ValueError("bounds need at least one dimension")
        if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
            raise ValueError("bounds must be finite")
        if np.any(lower >= upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        self.lower = lower
        self.upper = upper

    @classmethod
    def uniform(cls, low: float, high: float, dimension: int) -> "Bounds":
        return cls(np.full(dimension, float(low)), np.full(dimension, float(high)))

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __repr__(self):
        if np.all(self.lower == self.lower[0]) and np.all(self.upper == self.upper[0]):
            return f"Bounds([{self.lower[0]:g}, {self.upper[0]:g}] x {self.dimension})"
        return f"Bounds(lower={self.lower!r}, upper={self.upper!r})"


@dataclass
class Candidate:
    """A decision vector together with its cached objective value."""

    position: np.ndarray
    value: float
    abc_fitness: Optional[float] = None

    def copy(self) -> "Candidate":
        return Candidate(self.position.copy(), self.value, self.abc_fitness)


@dataclass(frozen=True)
class ObjectiveSpec:
    """An objective to minimise over a box.

    ``function`` maps one position to a float. ``kernel_code`` identifies one
    of the built-in benchmarks so batched evaluation can go through the
    compiled kernels; user objectives leave it as ``None``.
    """

    name: str
    dimension: int
    bounds: Bounds
    function: Callable[[np.ndarray], float]
    known_optimum_value: Optional[float] = None
    known_optimum_point: Optional[np.ndarray] = None
    kernel_code: Optional[int] = None
    batch_function: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.bounds.dimension != self.dimension:
            raise ValueError("bounds dimension does not match objective dimension")

    def evaluate(self, x) -> float:
        return float(self.function(np.asarray(x, dtype=float)))

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        """Evaluate every row of ``X``."""
        X = np.ascontiguousarray(X, dtype=float)
        if self.kernel_code is not None:
            from . import kernels

            return kernels.evaluate(self.kernel_code, X)
        if self.batch_function is not None:
            return np.asarray(self.batch_function(X), dtype=float)
        return np.array([self.function(row) for row in X], dtype=float)


class RandomSource:
    """Seeded pseudo-random stream (PCG64 behind a small, mockable surface).

    Child streams derived with :meth:`spawn` depend only on the parent seed and
    the child index, never on how many draws the parent has made.
    """

    def __init__(self, seed=None):
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            if seed is None:
                raise ValueError("RandomSource needs an explicit seed")
            self._seq = np.random.SeedSequence(int(seed))
        self.generator = np.random.Generator(np.random.PCG64(self._seq))

    @property
    def seed(self):
        return self._seq.entropy

    def spawn(self, index: int) -> "RandomSource":
        key = tuple(self._seq.spawn_key) + (int(index),)
        return RandomSource(np.random.SeedSequence(self._seq.entropy, spawn_key=key))

    def random(self, size=None):
        """Uniform draws on [0, 1)."""
        return self.generator.random(size)

    def uniform(self, low, high, size=None):
        return self.generator.uniform(low, high, size)

    def integers(self, low, high, size=None):
        """Integers on ``[low, high)``."""
        return self.generator.integers(low, high, size)

    def exponential(self, size=None):
        return self.generator.exponential(1.0, size)


def random_uniform_vector(bounds: Bounds, rng: RandomSource) -> np.ndarray:
    """Draw ``lower + rho * (upper - lower)`` with a fresh ``rho`` per coordinate."""
    rho = np.asarray(rng.random(bounds.dimension), dtype=float)
    return bounds.lower + rho * (bounds.upper - bounds.lower)


def random_uniform_matrix(bounds: Bounds, count: int, rng: RandomSource) -> np.ndarray:
    """``count`` independent uniform positions, one per row."""
    rho = np.asarray(rng.random((count, bounds.dimension)), dtype=float).reshape(count, bounds.dimension)
    return bounds.lower + rho * (bounds.upper - bounds.lower)


def clip_to_bounds(x, bounds: Bounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != bounds.dimension:
        raise ValueError(
            f"position has {x.shape[-1]} coordinates but bounds have {bounds.dimension}"
        )
    return np.clip(x, bounds.lower, bounds.upper)


def abc_fitness(f):
    """Nectar amount of a source: ``1/(1+f)`` for ``f >= 0``, else ``1+|f|``.

    Accepts a scalar or an array.
    """
    arr = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("abc_fitness needs finite objective values")
    out = np.where(arr >= 0, 1.0 / (1.0 + np.abs(arr)), 1.0 + np.abs(arr))
    if out.ndim == 0:
        return float(out)
    return out


def selection_probabilities(fitnesses) -> np.ndarray:
    F = np.asarray(fitnesses, dtype=float)
    if F.size == 0:
        raise ValueError("selection needs at least one fitness value")
    if np.any(~(F > 0)):
        raise ValueError("fitness values must be strictly positive")
    return F / F.sum()


def roulette_indices(probabilities, draws) -> np.ndarray:
    """Map uniform ``draws`` on [0, 1) to indices by cumulative-sum inversion."""
    cdf = np.cumsum(np.asarray(probabilities, dtype=float))
    idx = np.searchsorted(cdf, np.asarray(draws, dtype=float), side="right")
    # cdf[-1] can round to slightly below 1
    return np.minimum(idx, cdf.size - 1)


def roulette_pick(probabilities, rng: RandomSource) -> int:
    return int(roulette_indices(probabilities, rng.random()))


def uniform_other_index(draws, exclude, n: int) -> np.ndarray:
    """Turn uniform draws into indices on ``range(n)`` that skip ``exclude``.

    ``exclude`` may be a scalar or an array aligned with ``draws``.
    """
    k = np.floor(np.asarray(draws, dtype=float) * (n - 1)).astype(np.intp)
    k = np.minimum(k, n - 2)
    return k + (k >= exclude)
