"""Honeybee-inspired derivative-free optimisers and benchmark harness."""

from .abc import AbcParams, run_abc
from .ba import BaParams, run_ba
from .benchmarks import BENCHMARK_IDS, gap_to_optimum, make_benchmark
from .core import Bounds, Candidate, ObjectiveSpec, RandomSource
from .hybrid import HybridParams, run_hybrid
from .kernels import BACKEND
from .records import RunRecord

__version__ = "0.1.0"

__all__ = [
    "AbcParams",
    "BaParams",
    "HybridParams",
    "Bounds",
    "Candidate",
    "ObjectiveSpec",
    "RandomSource",
    "RunRecord",
    "BENCHMARK_IDS",
    "BACKEND",
    "make_benchmark",
    "gap_to_optimum",
    "run_ba",
    "run_abc",
    "run_hybrid",
]
