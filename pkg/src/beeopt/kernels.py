"""Backend selection for the hot kernels.

The compiled extension ``beeopt._ckernels`` is used when it imports; otherwise
(or when the environment variable ``BEEOPT_PURE_PYTHON`` is set to a non-empty
value other than ``0``) the NumPy implementation in ``beeopt._pykernels`` is
used. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

SPHERE = _pykernels.SPHERE
ROSENBROCK = _pykernels.ROSENBROCK
ACKLEY = _pykernels.ACKLEY
GRIEWANK = _pykernels.GRIEWANK
RASTRIGIN = _pykernels.RASTRIGIN
SCHWEFEL = _pykernels.SCHWEFEL


def _want_pure():
    flag = os.environ.get("BEEOPT_PURE_PYTHON", "")
    return flag not in ("", "0")


_impl = _pykernels
BACKEND = "python"
if not _want_pure():
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels

evaluate = _impl.evaluate
evaluate_one = _impl.evaluate_one
abc_sweep = _impl.abc_sweep
abc_sweep_full = _impl.abc_sweep_full


def backends():
    """Map of every importable backend name to its module."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["compiled"] = _ckernels
    return out
