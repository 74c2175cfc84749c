"""Numpy fallback for the compiled kernels.

Mirrors the signatures of ``ncgkit._kernels`` exactly so the two modules are
interchangeable at import time.
"""
import numpy as np

BACKEND = "python"


def dot(a, b):
    return float(np.dot(a, b))


def norm2(a):
    return float(np.sqrt(np.dot(a, a)))


def norm_inf(a):
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def axpy(alpha, x, y, out):
    np.multiply(x, alpha, out=out)
    out += y


def combine(ca, a, cb, b, out):
    np.multiply(a, ca, out=out)
    out += cb * b


def all_finite(a):
    return bool(np.isfinite(a).all())
