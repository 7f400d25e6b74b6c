"""Pure-Python (NumPy) versions of the hot kernels.

Same signatures as the compiled ``_ckernels`` module; used when the extension
is not built or when ``BEEOPT_PURE_PYTHON=1``.
"""

import math

import numpy as np

SPHERE, ROSENBROCK, ACKLEY, GRIEWANK, RASTRIGIN, SCHWEFEL = range(6)

_TWO_PI = 2.0 * math.pi


def sphere(X):
    return np.sum(X * X, axis=-1)


def rosenbrock(X):
    head = X[..., :-1]
    tail = X[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=-1)


def ackley(X):
    D = X.shape[-1]
    s1 = np.sum(X * X, axis=-1) / D
    s2 = np.sum(np.cos(_TWO_PI * X), axis=-1) / D
    return -20.0 * np.exp(-0.2 * np.sqrt(s1)) - np.exp(s2) + 20.0 + math.e


def griewank(X):
    D = X.shape[-1]
    scale = np.sqrt(np.arange(1, D + 1, dtype=float))
    return np.sum(X * X, axis=-1) / 4000.0 - np.prod(np.cos(X / scale), axis=-1) + 1.0


def rastrigin(X):
    return np.sum(X * X - 10.0 * np.cos(_TWO_PI * X) + 10.0, axis=-1)


def schwefel(X):
    return -np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=-1)


_FUNCS = (sphere, rosenbrock, ackley, griewank, rastrigin, schwefel)


def _check(code):
    if not 0 <= code < len(_FUNCS):
        raise ValueError("unknown benchmark code %d" % code)


def evaluate(code, X):
    """Objective values of each row of the 2-D array ``X``."""
    _check(code)
    return np.asarray(_FUNCS[code](np.asarray(X, dtype=float)), dtype=float)


def evaluate_one(code, x):
    _check(code)
    return float(_FUNCS[code](np.asarray(x, dtype=float)))


def abc_sweep(code, X, f, trials, sources, partners, dims, phis, lower, upper,
              clip, count_failures, func=None):
    """Sequential employed/onlooker sweep, updating ``X``, ``f``, ``trials`` in place.

    Step ``t`` perturbs coordinate ``dims[t]`` of source ``sources[t]`` towards or
    away from ``partners[t]`` by ``phis[t]`` and keeps the result only if it is
    strictly better. A negative ``code`` means ``func`` evaluates positions.
    Returns the number of accepted moves.
    """
    if code < 0 and func is None:
        raise ValueError("custom objective sweep needs func")
    accepted = 0
    v = np.empty(X.shape[1])
    for t in range(len(sources)):
        i = sources[t]
        k = partners[t]
        j = dims[t]
        xij = X[i, j]
        vj = xij + phis[t] * (xij - X[k, j])
        if clip:
            if vj < lower[j]:
                vj = lower[j]
            elif vj > upper[j]:
                vj = upper[j]
        v[:] = X[i]
        v[j] = vj
        fv = func(v) if code < 0 else evaluate_one(code, v)
        if fv < f[i]:
            X[i, j] = vj
            f[i] = fv
            trials[i] = 0
            accepted += 1
        elif count_failures:
            trials[i] += 1
    return accepted


def abc_sweep_full(code, X, f, trials, sources, partners, phis, lower, upper,
                   clip, count_failures, func=None):
    """Like :func:`abc_sweep` but every coordinate moves: row ``t`` of the 2-D
    ``phis`` holds one coefficient per coordinate."""
    if code < 0 and func is None:
        raise ValueError("custom objective sweep needs func")
    accepted = 0
    for t in range(len(sources)):
        i = sources[t]
        v = X[i] + phis[t] * (X[i] - X[partners[t]])
        if clip:
            np.clip(v, lower, upper, out=v)
        fv = func(v) if code < 0 else evaluate_one(code, v)
        if fv < f[i]:
            X[i] = v
            f[i] = fv
            trials[i] = 0
            accepted += 1
        elif count_failures:
            trials[i] += 1
    return accepted
