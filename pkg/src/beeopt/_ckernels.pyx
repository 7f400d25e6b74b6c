# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched benchmark evaluation and the sequential ABC
sweep. Mirrors ``beeopt._pykernels`` exactly in signature and semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, cos, sin, fabs, M_PI, M_E

cnp.import_array()

cdef enum:
    SPHERE = 0
    ROSENBROCK = 1
    ACKLEY = 2
    GRIEWANK = 3
    RASTRIGIN = 4
    SCHWEFEL = 5


cdef double _row(int code, const double* x, Py_ssize_t D) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0, s2 = 0.0, p = 1.0, a, b
    if code == SPHERE:
        for i in range(D):
            s += x[i] * x[i]
        return s
    elif code == ROSENBROCK:
        for i in range(D - 1):
            a = x[i + 1] - x[i] * x[i]
            b = x[i] - 1.0
            s += 100.0 * a * a + b * b
        return s
    elif code == ACKLEY:
        for i in range(D):
            s += x[i] * x[i]
            s2 += cos(2.0 * M_PI * x[i])
        return -20.0 * exp(-0.2 * sqrt(s / D)) - exp(s2 / D) + 20.0 + M_E
    elif code == GRIEWANK:
        for i in range(D):
            s += x[i] * x[i]
            p *= cos(x[i] / sqrt(<double>(i + 1)))
        return s / 4000.0 - p + 1.0
    elif code == RASTRIGIN:
        for i in range(D):
            s += x[i] * x[i] - 10.0 * cos(2.0 * M_PI * x[i]) + 10.0
        return s
    else:
        for i in range(D):
            s += x[i] * sin(sqrt(fabs(x[i])))
        return -s


def evaluate(int code, X):
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = Xv.shape[0], D = Xv.shape[1], r
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    if code < 0 or code > SCHWEFEL:
        raise ValueError("unknown benchmark code %d" % code)
    if n == 0:
        return out
    with nogil:
        for r in range(n):
            ov[r] = _row(code, &Xv[r, 0], D)
    return out


def evaluate_one(int code, x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    if code < 0 or code > SCHWEFEL:
        raise ValueError("unknown benchmark code %d" % code)
    return _row(code, &xv[0], xv.shape[0])


def abc_sweep(int code, double[:, ::1] X, double[::1] f, cnp.int64_t[::1] trials,
              sources, partners, dims, const double[::1] phis,
              const double[::1] lower, const double[::1] upper,
              bint clip, bint count_failures, func=None):
    """See ``beeopt._pykernels.abc_sweep``."""
    cdef Py_ssize_t[::1] src = np.ascontiguousarray(sources, dtype=np.intp)
    cdef Py_ssize_t[::1] par = np.ascontiguousarray(partners, dtype=np.intp)
    cdef Py_ssize_t[::1] dim = np.ascontiguousarray(dims, dtype=np.intp)
    cdef Py_ssize_t n = src.shape[0], D = X.shape[1], t, i, k, j
    cdef double xij, vj, fv
    cdef long accepted = 0
    if code < 0:
        if func is None:
            raise ValueError("custom objective sweep needs func")
        v = np.empty(D)
        for t in range(n):
            i = src[t]; k = par[t]; j = dim[t]
            xij = X[i, j]
            vj = xij + phis[t] * (xij - X[k, j])
            if clip:
                if vj < lower[j]:
                    vj = lower[j]
                elif vj > upper[j]:
                    vj = upper[j]
            v[:] = X[i]
            v[j] = vj
            fv = func(v)
            if fv < f[i]:
                X[i, j] = vj
                f[i] = fv
                trials[i] = 0
                accepted += 1
            elif count_failures:
                trials[i] += 1
        return accepted
    with nogil:
        for t in range(n):
            i = src[t]; k = par[t]; j = dim[t]
            xij = X[i, j]
            vj = xij + phis[t] * (xij - X[k, j])
            if clip:
                if vj < lower[j]:
                    vj = lower[j]
                elif vj > upper[j]:
                    vj = upper[j]
            # evaluate in place, then restore on rejection
            X[i, j] = vj
            fv = _row(code, &X[i, 0], D)
            if fv < f[i]:
                f[i] = fv
                trials[i] = 0
                accepted += 1
            else:
                X[i, j] = xij
                if count_failures:
                    trials[i] += 1
    return accepted


def abc_sweep_full(int code, double[:, ::1] X, double[::1] f, cnp.int64_t[::1] trials,
                   sources, partners, const double[:, ::1] phis,
                   const double[::1] lower, const double[::1] upper,
                   bint clip, bint count_failures, func=None):
    """See ``beeopt._pykernels.abc_sweep_full``."""
    cdef Py_ssize_t[::1] src = np.ascontiguousarray(sources, dtype=np.intp)
    cdef Py_ssize_t[::1] par = np.ascontiguousarray(partners, dtype=np.intp)
    cdef Py_ssize_t n = src.shape[0], D = X.shape[1], t, i, k, j
    cdef double fv, vj
    cdef long accepted = 0
    v = np.empty(D)
    cdef double[::1] vv = v
    if code < 0 and func is None:
        raise ValueError("custom objective sweep needs func")
    for t in range(n):
        i = src[t]; k = par[t]
        for j in range(D):
            vj = X[i, j] + phis[t, j] * (X[i, j] - X[k, j])
            if clip:
                if vj < lower[j]:
                    vj = lower[j]
                elif vj > upper[j]:
                    vj = upper[j]
            vv[j] = vj
        if code < 0:
            fv = func(v)
        else:
            fv = _row(code, &vv[0], D)
        if fv < f[i]:
            for j in range(D):
                X[i, j] = vv[j]
            f[i] = fv
            trials[i] = 0
            accepted += 1
        elif count_failures:
            trials[i] += 1
    return accepted
