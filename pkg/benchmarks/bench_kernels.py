"""Time the compiled kernels against the NumPy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Kernel timings call both backend modules directly. ``--end-to-end`` also runs
one classic ABC and one hybrid run in subprocesses, with and without
``BEEOPT_PURE_PYTHON=1``.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from beeopt import kernels

NAMES = ("sphere", "rosenbrock", "ackley", "griewank", "rastrigin", "schwefel")

RUN_SNIPPET = """
import time
from beeopt import AbcParams, HybridParams, make_benchmark, run_abc, run_hybrid, BACKEND
spec = make_benchmark("rastrigin", 30)
t = time.perf_counter(); run_abc(spec, AbcParams(), 200, 1); a = time.perf_counter() - t
t = time.perf_counter(); run_hybrid(spec, HybridParams(), 50, 1); h = time.perf_counter() - t
print(BACKEND, a, h)
"""


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_evaluate(mods, repeat):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}" + "".join(f"{m:>14}" for m in mods) + f"{'speed-up':>11}")
    for rows, D in ((1, 30), (650, 30), (650, 150)):
        X = rng.uniform(-5, 5, (rows, D))
        for code, name in enumerate(NAMES):
            times = [best_of(lambda m=m: mods[m].evaluate(code, X), repeat, 200) for m in mods]
            label = f"{name} {rows}x{D}"
            print(f"{label:<24}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
                  + (f"{times[-1] / times[0]:10.1f}x" if len(times) > 1 else ""))


def bench_sweep(mods, repeat):
    rng = np.random.default_rng(1)
    n, D = 100, 30
    base_X = rng.uniform(-5.12, 5.12, (n, D))
    base_f = kernels.evaluate(kernels.RASTRIGIN, base_X)
    sources = np.arange(n)
    partners = (sources + 1 + rng.integers(0, n - 1, n)) % n
    dims = rng.integers(0, D, n)
    phis = rng.uniform(-1, 1, n)
    phis_full = rng.uniform(-1, 1, (n, D))
    lower, upper = np.full(D, -5.12), np.full(D, 5.12)
    for label, full in (("abc sweep single", False), ("abc sweep all", True)):
        times = []
        for m in mods.values():
            def call(m=m):
                X, f = base_X.copy(), base_f.copy()
                trials = np.zeros(n, dtype=np.int64)
                if full:
                    m.abc_sweep_full(kernels.RASTRIGIN, X, f, trials, sources, partners,
                                     phis_full, lower, upper, True, True)
                else:
                    m.abc_sweep(kernels.RASTRIGIN, X, f, trials, sources, partners, dims, phis,
                                lower, upper, True, True)
            times.append(best_of(call, repeat, 20))
        print(f"{label + ' 100x30':<24}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
              + (f"{times[-1] / times[0]:10.1f}x" if len(times) > 1 else ""))


def bench_runs():
    print("\nend-to-end (seconds): backend, abc rastrigin D30 200 it, hybrid rastrigin D30 50 it")
    for pure in ("0", "1"):
        env = dict(os.environ, BEEOPT_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", RUN_SNIPPET], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:<10}{float(out[1]):8.3f}{float(out[2]):8.3f}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args(argv)
    mods = kernels.backends()
    if "compiled" not in mods:
        print("compiled extension not available; timing the fallback only")
    mods = dict(sorted(mods.items()))  # compiled first
    bench_evaluate(mods, args.repeat)
    bench_sweep(mods, args.repeat)
    if args.end_to_end:
        bench_runs()
    return 0


if __name__ == "__main__":
    sys.exit(main())
