#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times each hot kernel at several vector sizes (in-process, importing both
backend modules directly), then a few end-to-end solves per backend in
subprocesses, since the backend is fixed at import time.

Usage: python benchmarks/kernel_bench.py [--repeats N]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from ncgkit import _kernels_py

try:
    from ncgkit import _kernels
except ImportError:
    _kernels = None

SIZES = (2, 10, 100, 1000, 10000)

SOLVE_SNIPPET = """
import time
import ncgkit as nk
t0 = time.perf_counter()
for spec in nk.suite():
    nk.minimize(spec.objective(), spec.x0)
print(f"{nk.kernel_backend()}: full MPRP suite sweep in {time.perf_counter() - t0:.3f} s")
"""


def time_kernel(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def bench_kernels(repeats):
    rng = np.random.default_rng(0)
    print(f"{'kernel':10s} {'n':>6s} {'numpy (ns)':>12s} {'cython (ns)':>12s} {'speedup':>8s}")
    for n in SIZES:
        a, b = rng.standard_normal(n), rng.standard_normal(n)
        out = np.empty(n)
        number = max(100, repeats // n)
        cases = [
            ("dot", lambda k: (lambda: k.dot(a, b))),
            ("norm2", lambda k: (lambda: k.norm2(a))),
            ("norm_inf", lambda k: (lambda: k.norm_inf(a))),
            ("axpy", lambda k: (lambda: k.axpy(0.7, a, b, out))),
            ("combine", lambda k: (lambda: k.combine(-1.0, a, 0.4, b, out))),
            ("all_finite", lambda k: (lambda: k.all_finite(a))),
        ]
        for name, make in cases:
            t_py = time_kernel(make(_kernels_py), number)
            if _kernels is None:
                print(f"{name:10s} {n:6d} {t_py * 1e9:12.0f} {'n/a':>12s} {'n/a':>8s}")
            else:
                t_cy = time_kernel(make(_kernels), number)
                print(f"{name:10s} {n:6d} {t_py * 1e9:12.0f} {t_cy * 1e9:12.0f} {t_py / t_cy:8.1f}x")
        print()


def bench_solves():
    print("end-to-end (49-problem suite, MPRP + interpolation):")
    for env_value in ("0", "1"):
        env = dict(os.environ, NCG_PURE_PYTHON=env_value)
        proc = subprocess.run([sys.executable, "-c", SOLVE_SNIPPET], env=env,
                              capture_output=True, text=True)
        sys.stdout.write(proc.stdout or proc.stderr)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200_000,
                        help="per-kernel call budget divided by vector size (default 200000)")
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not available; timing the numpy fallback only\n")
    bench_kernels(args.repeats)
    bench_solves()


if __name__ == "__main__":
    main()
