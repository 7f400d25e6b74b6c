"""Result record shared by every colony runner and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass
class RunRecord:
    """Outcome of one seeded run.

    ``trace[t]`` is the best value seen after ``t`` iterations, so
    ``len(trace) == iterations + 1`` and ``trace[0]`` is the best of the
    initial population.
    """

    algorithm: str
    benchmark: str
    dimension: int
    iterations: int
    seed: int
    trace: np.ndarray
    final_value: float
    final_gap: Optional[float]
    evaluations: int
    wall_time_s: float = 0.0
    best_position: Optional[np.ndarray] = field(default=None, repr=False)
    replication: int = 0

    @property
    def config_key(self):
        return (self.algorithm, self.benchmark, self.dimension, self.iterations)


def finish_record(algorithm, spec, iterations, seed, trace, best_value, best_position,
                  evaluations, wall_time_s):
    gap = None
    if spec.known_optimum_value is not None:
        gap = float(best_value) - spec.known_optimum_value
    return RunRecord(
        algorithm=algorithm,
        benchmark=spec.name,
        dimension=spec.dimension,
        iterations=int(iterations),
        seed=seed,
        trace=np.asarray(trace, dtype=float),
        final_value=float(best_value),
        final_gap=gap,
        evaluations=int(evaluations),
        wall_time_s=float(wall_time_s),
        best_position=np.array(best_position, dtype=float),
    )
