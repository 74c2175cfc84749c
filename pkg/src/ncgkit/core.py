"""Dense vector arithmetic and the objective-function abstraction.

All vectors are 1-D contiguous float64 numpy arrays.  The arithmetic kernels
are dispatched to the compiled extension when it is available; set
``NCG_PURE_PYTHON=1`` to force the numpy fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from .errors import DimensionMismatchError, EvaluationError

if os.environ.get("NCG_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _K
else:
    try:
        from . import _kernels as _K  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _K  # type: ignore[no-redef]

Vector = NDArray[np.float64]


def kernel_backend() -> str:
    """Name of the active kernel backend: ``"cython"`` or ``"python"``."""
    return _K.BACKEND


def as_vector(data) -> Vector:
    """Coerce to a finite, contiguous float64 vector of length >= 1."""
    v = np.ascontiguousarray(data, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatchError(f"expected a 1-D vector of length >= 1, got shape {v.shape}")
    if not _K.all_finite(v):
        raise EvaluationError("vector contains NaN or Inf")
    return v


def _check_same_len(a: Vector, b: Vector) -> None:
    if len(a) != len(b):
        raise DimensionMismatchError(f"length mismatch: {len(a)} vs {len(b)}")


def dot(a: Vector, b: Vector) -> float:
    """Euclidean inner product."""
    _check_same_len(a, b)
    return _K.dot(a, b)


def norm2(a: Vector) -> float:
    """Euclidean norm, sqrt(dot(a, a))."""
    return _K.norm2(a)


def norm_inf(a: Vector) -> float:
    """Max-norm, max |a_i|."""
    return _K.norm_inf(a)


def axpy(alpha: float, x: Vector, y: Vector) -> Vector:
    """Return y + alpha * x without modifying the inputs."""
    _check_same_len(x, y)
    out = np.empty_like(y)
    _K.axpy(alpha, x, y, out)
    return out


def combine(ca: float, a: Vector, cb: float, b: Vector) -> Vector:
    """Return ca * a + cb * b without modifying the inputs."""
    _check_same_len(a, b)
    out = np.empty_like(a)
    _K.combine(ca, a, cb, b, out)
    return out


@dataclass(frozen=True)
class Objective:
    """A smooth objective: f(x) and its analytic gradient.

    ``f`` and ``grad`` must be pure.  NaN/Inf results are surfaced as
    :class:`EvaluationError` so the solver can tell divergence from
    convergence.
    """

    name: str
    dim: int
    f: Callable[[Vector], float]
    grad: Callable[[Vector], Vector]

    def value(self, x: Vector) -> float:
        fx = float(self.f(x))
        if not np.isfinite(fx):
            raise EvaluationError(f"{self.name}: f(x) is not finite at x with |x|_inf={norm_inf(x):.3g}")
        return fx

    def gradient(self, x: Vector) -> Vector:
        g = np.ascontiguousarray(self.grad(x), dtype=np.float64)
        if g.shape != (self.dim,):
            raise DimensionMismatchError(f"{self.name}: gradient has shape {g.shape}, expected ({self.dim},)")
        if not _K.all_finite(g):
            raise EvaluationError(f"{self.name}: gradient is not finite")
        return g


def check_gradient(obj: Objective, x: Vector, h: float = 1e-6) -> float:
    """Max relative error between the analytic gradient and a central
    finite difference, with denominator max(1, |g_i|).

    The independent side of every gradient-fidelity check in the test suite;
    keep it free of the analytic gradient formulas it validates.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    g = obj.gradient(x)
    worst = 0.0
    xp = np.array(x, dtype=np.float64)
    xm = np.array(x, dtype=np.float64)
    for i in range(len(x)):
        orig = x[i]
        xp[i] = orig + h
        xm[i] = orig - h
        fd = (obj.value(xp) - obj.value(xm)) / (2.0 * h)
        xp[i] = orig
        xm[i] = orig
        err = abs(fd - g[i]) / max(1.0, abs(g[i]))
        if err > worst:
            worst = err
    return worst
