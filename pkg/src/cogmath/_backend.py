"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. :func:`use` switches at runtime (benchmarks, cross-checks).
"""

import numpy as np

from cogmath import _pykernels

try:
    from cogmath import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active = "cython" if _ckernels is not None else "python"


def name():
    return _active


def available():
    return sorted(BACKENDS)


def use(backend):
    """Select the kernel backend by name; returns the previous one."""
    global _active
    if backend not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {backend!r}; have {available()}")
    previous, _active = _active, backend
    return previous


def kernels():
    return BACKENDS[_active]


def transitivity_violations(rel, limit=1):
    rel = np.ascontiguousarray(rel, dtype=np.uint8)
    return kernels().transitivity_violations(rel, limit)


def successor_candidates(leq):
    leq = np.ascontiguousarray(leq, dtype=np.uint8)
    return kernels().successor_candidates(leq).astype(bool)


def simulate_path(cum, start, uniforms):
    cum = np.ascontiguousarray(cum, dtype=np.float64)
    uniforms = np.ascontiguousarray(uniforms, dtype=np.float64)
    return kernels().simulate_path(cum, int(start), uniforms)
