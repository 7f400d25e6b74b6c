"""The compiled and NumPy kernels must agree."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beeopt import _pykernels, kernels

BACKENDS = kernels.backends()
needs_compiled = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
CODES = range(6)


def test_backend_name():
    assert kernels.BACKEND in BACKENDS


@needs_compiled
@pytest.mark.parametrize("code", CODES)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), D=st.integers(2, 40))
def test_evaluate_parity(code, seed, D):
    X = np.random.default_rng(seed).uniform(-50, 50, (7, D))
    c = BACKENDS["compiled"]
    np.testing.assert_allclose(c.evaluate(code, X), _pykernels.evaluate(code, X),
                               rtol=1e-12, atol=1e-12)
    assert c.evaluate_one(code, X[0]) == pytest.approx(_pykernels.evaluate_one(code, X[0]),
                                                       rel=1e-12, abs=1e-12)


def _sweep_inputs(seed, n, D, full):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-5, 5, (n, D))
    f = _pykernels.evaluate(_pykernels.RASTRIGIN, X)
    trials = rng.integers(0, 3, n).astype(np.int64)
    sources = rng.integers(0, n, 2 * n)
    partners = (sources + 1 + rng.integers(0, n - 1, 2 * n)) % n
    phis = rng.uniform(-1, 1, (2 * n, D) if full else 2 * n)
    dims = rng.integers(0, D, 2 * n)
    return X, f, trials, sources, partners, dims, phis


@needs_compiled
@pytest.mark.parametrize("full", [False, True])
@pytest.mark.parametrize("custom", [False, True])
@pytest.mark.parametrize("count", [False, True])
def test_sweep_parity(full, custom, count):
    c = BACKENDS["compiled"]
    lower, upper = np.full(6, -5.12), np.full(6, 5.12)
    code = -1 if custom else _pykernels.RASTRIGIN
    func = (lambda v: _pykernels.evaluate_one(_pykernels.RASTRIGIN, v)) if custom else None
    results = []
    for mod in (c, _pykernels):
        X, f, trials, sources, partners, dims, phis = _sweep_inputs(4, 12, 6, full)
        if full:
            acc = mod.abc_sweep_full(code, X, f, trials, sources, partners, phis, lower, upper,
                                     True, count, func)
        else:
            acc = mod.abc_sweep(code, X, f, trials, sources, partners, dims, phis, lower, upper,
                                True, count, func)
        results.append((acc, X, f, trials))
    (a1, X1, f1, t1), (a2, X2, f2, t2) = results
    assert a1 == a2
    np.testing.assert_allclose(X1, X2, rtol=1e-12)
    np.testing.assert_allclose(f1, f2, rtol=1e-12)
    np.testing.assert_array_equal(t1, t2)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_sweep_rejection_restores(name):
    mod = BACKENDS[name]
    X = np.array([[0.0, 0.0], [1.0, 1.0]])
    f = _pykernels.evaluate(_pykernels.SPHERE, X)
    trials = np.zeros(2, dtype=np.int64)
    # moving source 0 away from its partner can only worsen the sphere value
    acc = mod.abc_sweep(_pykernels.SPHERE, X, f, trials, np.array([0]), np.array([1]),
                        np.array([1]), np.array([0.5]), np.full(2, -5.0), np.full(2, 5.0),
                        True, True)
    assert acc == 0
    np.testing.assert_array_equal(X[0], [0.0, 0.0])
    assert trials[0] == 1


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_custom_needs_func(name):
    mod = BACKENDS[name]
    X = np.zeros((2, 2))
    with pytest.raises(ValueError):
        mod.abc_sweep(-1, X, np.zeros(2), np.zeros(2, dtype=np.int64), np.array([0]),
                      np.array([1]), np.array([0]), np.array([0.1]), np.full(2, -1.0),
                      np.full(2, 1.0), True, True)
