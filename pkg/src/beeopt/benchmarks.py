"""The six classic test functions as :class:`ObjectiveSpec` factories.

All are minimised. Ackley uses the ``+20 + e`` constant so that its minimum is
exactly 0; Schwefel is ``-sum(x * sin(sqrt(|x|)))`` with minimum
``-418.9829 * D`` near ``x_i = 420.9687``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from . import kernels
from ._pykernels import ackley, griewank, rastrigin, rosenbrock, schwefel, sphere
from .core import Bounds, ObjectiveSpec

__all__ = [
    "BENCHMARK_IDS",
    "BenchmarkInfo",
    "BENCHMARKS",
    "SCHWEFEL_OPTIMUM_PER_DIM",
    "SCHWEFEL_OPTIMUM_COORD",
    "make_benchmark",
    "gap_to_optimum",
    "sphere",
    "rosenbrock",
    "ackley",
    "griewank",
    "rastrigin",
    "schwefel",
]

SCHWEFEL_OPTIMUM_PER_DIM = -418.9829
SCHWEFEL_OPTIMUM_COORD = 420.9687


@dataclass(frozen=True)
class BenchmarkInfo:
    id: str
    code: int
    low: float
    high: float
    modality: str
    min_dimension: int = 1

    @property
    def optimum_label(self) -> str:
        if self.id == "schwefel":
            return f"{SCHWEFEL_OPTIMUM_PER_DIM}*D"
        return "0"


BENCHMARKS = {
    b.id: b
    for b in (
        BenchmarkInfo("sphere", kernels.SPHERE, -100.0, 100.0, "uni"),
        BenchmarkInfo("rosenbrock", kernels.ROSENBROCK, -2.048, 2.048, "uni", min_dimension=2),
        BenchmarkInfo("ackley", kernels.ACKLEY, -32.768, 32.768, "multi"),
        BenchmarkInfo("griewank", kernels.GRIEWANK, -600.0, 600.0, "multi"),
        BenchmarkInfo("rastrigin", kernels.RASTRIGIN, -5.12, 5.12, "multi"),
        BenchmarkInfo("schwefel", kernels.SCHWEFEL, -500.0, 500.0, "multi"),
    )
}

BENCHMARK_IDS = tuple(BENCHMARKS)


def _scalar(code, x):
    return kernels.evaluate_one(code, x)


def make_benchmark(benchmark_id: str, dimension: int) -> ObjectiveSpec:
    """Build the objective for ``benchmark_id`` at ``dimension`` coordinates.

    Raises
    ------
    ValueError
        For an unknown id or a dimension below the function's minimum
        (Rosenbrock needs at least 2).
    """
    try:
        info = BENCHMARKS[benchmark_id]
    except KeyError:
        raise ValueError(
            f"unknown benchmark {benchmark_id!r}; choose from {', '.join(BENCHMARK_IDS)}"
        ) from None
    dimension = int(dimension)
    if dimension < info.min_dimension:
        raise ValueError(
            f"{benchmark_id} needs dimension >= {info.min_dimension}, got {dimension}"
        )
    if benchmark_id == "rosenbrock":
        point = np.ones(dimension)
        value = 0.0
    elif benchmark_id == "schwefel":
        point = np.full(dimension, SCHWEFEL_OPTIMUM_COORD)
        value = SCHWEFEL_OPTIMUM_PER_DIM * dimension
    else:
        point = np.zeros(dimension)
        value = 0.0
    point.setflags(write=False)
    return ObjectiveSpec(
        name=benchmark_id,
        dimension=dimension,
        bounds=Bounds.uniform(info.low, info.high, dimension),
        function=partial(_scalar, info.code),
        known_optimum_value=value,
        known_optimum_point=point,
        kernel_code=info.code,
    )


def gap_to_optimum(spec: ObjectiveSpec, value: float) -> float:
    """Distance of ``value`` above the known optimum (``value - optimum``)."""
    if spec.known_optimum_value is None:
        raise ValueError(f"objective {spec.name!r} has no known optimum")
    return float(value) - spec.known_optimum_value
