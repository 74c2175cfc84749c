"""Benchmark objectives: a representative classical test-function suite and
the Lp-regularized least-squares problem whose gradient is non-Lipschitz.

Each suite entry carries an analytic gradient; the test suite validates every
formula against central finite differences, so treat ``check_gradient`` as
the oracle when editing anything here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import IO, Callable, Optional, Sequence

import numpy as np

from .core import Objective, Vector
from .errors import ConfigurationError

DIMS = (2, 10, 100)


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    name: str
    family: str
    dim: int
    x0: Vector
    f: Callable[[Vector], float]
    grad: Callable[[Vector], Vector]
    reference: str

    @property
    def key(self) -> str:
        return f"{self.name}-{self.dim}"

    def objective(self) -> Objective:
        return Objective(name=self.key, dim=self.dim, f=self.f, grad=self.grad)


# -- pairwise "extended" functions: x is split into (u, v) = (odd, even) slots

def _ext_rosenbrock_f(x):
    u, v = x[0::2], x[1::2]
    t = v - u * u
    return float(np.sum(100.0 * t * t + (1.0 - u) ** 2))


def _ext_rosenbrock_grad(x):
    g = np.empty_like(x)
    u, v = x[0::2], x[1::2]
    t = v - u * u
    g[0::2] = -400.0 * u * t - 2.0 * (1.0 - u)
    g[1::2] = 200.0 * t
    return g


def _ext_white_holst_f(x):
    u, v = x[0::2], x[1::2]
    t = v - u**3
    return float(np.sum(100.0 * t * t + (1.0 - u) ** 2))


def _ext_white_holst_grad(x):
    g = np.empty_like(x)
    u, v = x[0::2], x[1::2]
    t = v - u**3
    g[0::2] = -600.0 * u * u * t - 2.0 * (1.0 - u)
    g[1::2] = 200.0 * t
    return g


def _ext_beale_f(x):
    u, v = x[0::2], x[1::2]
    t1 = 1.5 - u * (1.0 - v)
    t2 = 2.25 - u * (1.0 - v * v)
    t3 = 2.625 - u * (1.0 - v**3)
    return float(np.sum(t1 * t1 + t2 * t2 + t3 * t3))


def _ext_beale_grad(x):
    g = np.empty_like(x)
    u, v = x[0::2], x[1::2]
    t1 = 1.5 - u * (1.0 - v)
    t2 = 2.25 - u * (1.0 - v * v)
    t3 = 2.625 - u * (1.0 - v**3)
    g[0::2] = -2.0 * (t1 * (1.0 - v) + t2 * (1.0 - v * v) + t3 * (1.0 - v**3))
    g[1::2] = 2.0 * u * (t1 + 2.0 * v * t2 + 3.0 * v * v * t3)
    return g


def _ext_himmelblau_f(x):
    u, v = x[0::2], x[1::2]
    a = u * u + v - 11.0
    b = u + v * v - 7.0
    return float(np.sum(a * a + b * b))


def _ext_himmelblau_grad(x):
    g = np.empty_like(x)
    u, v = x[0::2], x[1::2]
    a = u * u + v - 11.0
    b = u + v * v - 7.0
    g[0::2] = 4.0 * u * a + 2.0 * b
    g[1::2] = 2.0 * a + 4.0 * v * b
    return g


def _ext_tridiagonal1_f(x):
    u, v = x[0::2], x[1::2]
    a = u + v - 3.0
    b = u - v + 1.0
    return float(np.sum(a * a + b**4))


def _ext_tridiagonal1_grad(x):
    g = np.empty_like(x)
    u, v = x[0::2], x[1::2]
    a = u + v - 3.0
    b3 = (u - v + 1.0) ** 3
    g[0::2] = 2.0 * a + 4.0 * b3
    g[1::2] = 2.0 * a - 4.0 * b3
    return g


def _diagonal4_f(x):
    u, v = x[0::2], x[1::2]
    return float(0.5 * np.sum(u * u + 100.0 * v * v))


def _diagonal4_grad(x):
    g = np.empty_like(x)
    g[0::2] = x[0::2]
    g[1::2] = 100.0 * x[1::2]
    return g


# -- chained / separable functions

def _gen_quartic_f(x):
    head = x[:-1]
    t = x[1:] + head * head
    return float(np.sum(head * head + t * t))


def _gen_quartic_grad(x):
    g = np.zeros_like(x)
    head = x[:-1]
    t = x[1:] + head * head
    g[:-1] += 2.0 * head + 4.0 * head * t
    g[1:] += 2.0 * t
    return g


def _diagonal1_f(x):
    i = np.arange(1.0, len(x) + 1.0)
    return float(np.sum(np.exp(x) - i * x))


def _diagonal1_grad(x):
    i = np.arange(1.0, len(x) + 1.0)
    return np.exp(x) - i


def _raydan1_f(x):
    w = np.arange(1.0, len(x) + 1.0) / 10.0
    return float(np.sum(w * (np.exp(x) - x)))


def _raydan1_grad(x):
    w = np.arange(1.0, len(x) + 1.0) / 10.0
    return w * (np.exp(x) - 1.0)


def _raydan2_f(x):
    return float(np.sum(np.exp(x) - x))


def _raydan2_grad(x):
    return np.exp(x) - 1.0


def _qf1_f(x):
    i = np.arange(1.0, len(x) + 1.0)
    return float(0.5 * np.sum(i * x * x) - x[-1])


def _qf1_grad(x):
    i = np.arange(1.0, len(x) + 1.0)
    g = i * x
    g[-1] -= 1.0
    return g


def _qf2_f(x):
    i = np.arange(1.0, len(x) + 1.0)
    t = x * x - 1.0
    return float(0.5 * np.sum(i * t * t) - x[-1])


def _qf2_grad(x):
    i = np.arange(1.0, len(x) + 1.0)
    g = 2.0 * i * x * (x * x - 1.0)
    g[-1] -= 1.0
    return g


def _ext_penalty_f(x):
    s = float(np.dot(x, x))
    return float(np.sum((x[:-1] - 1.0) ** 2) + (s - 0.25) ** 2)


def _ext_penalty_grad(x):
    s = float(np.dot(x, x))
    g = 4.0 * (s - 0.25) * x
    g[:-1] += 2.0 * (x[:-1] - 1.0)
    return g


def _perturbed_quadratic_f(x):
    i = np.arange(1.0, len(x) + 1.0)
    s = float(np.sum(x))
    return float(np.sum(i * x * x) + 0.01 * s * s)


def _perturbed_quadratic_grad(x):
    i = np.arange(1.0, len(x) + 1.0)
    s = float(np.sum(x))
    return 2.0 * i * x + 0.02 * s


def _hager_f(x):
    r = np.sqrt(np.arange(1.0, len(x) + 1.0))
    return float(np.sum(np.exp(x) - r * x))


def _hager_grad(x):
    r = np.sqrt(np.arange(1.0, len(x) + 1.0))
    return np.exp(x) - r


def _ext_trigonometric_f(x):
    # n - sum(cos x) is written sum(1 - cos x): same value, but no
    # large-magnitude cancellation, which matters for the gradient check
    i = np.arange(1.0, len(x) + 1.0)
    omc = 1.0 - np.cos(x)
    t = np.sum(omc) + i * omc - np.sin(x)
    return float(np.sum(t * t))


def _ext_trigonometric_grad(x):
    i = np.arange(1.0, len(x) + 1.0)
    c = np.cos(x)
    s = np.sin(x)
    omc = 1.0 - c
    t = np.sum(omc) + i * omc - s
    return 2.0 * s * np.sum(t) + 2.0 * t * (i * s - c)


def _sphere_f(x):
    return float(0.5 * np.dot(x, x))


def _sphere_grad(x):
    return np.array(x, dtype=np.float64)


# -- fixed-dimension classics

def _wood_f(x):
    x1, x2, x3, x4 = x
    return (100.0 * (x2 - x1 * x1) ** 2 + (1.0 - x1) ** 2
            + 90.0 * (x4 - x3 * x3) ** 2 + (1.0 - x3) ** 2
            + 10.1 * ((x2 - 1.0) ** 2 + (x4 - 1.0) ** 2)
            + 19.8 * (x2 - 1.0) * (x4 - 1.0))


def _wood_grad(x):
    x1, x2, x3, x4 = x
    return np.array([
        -400.0 * x1 * (x2 - x1 * x1) - 2.0 * (1.0 - x1),
        200.0 * (x2 - x1 * x1) + 20.2 * (x2 - 1.0) + 19.8 * (x4 - 1.0),
        -360.0 * x3 * (x4 - x3 * x3) - 2.0 * (1.0 - x3),
        180.0 * (x4 - x3 * x3) + 20.2 * (x4 - 1.0) + 19.8 * (x2 - 1.0),
    ])


def _powell_singular_f(x):
    x1, x2, x3, x4 = x
    return ((x1 + 10.0 * x2) ** 2 + 5.0 * (x3 - x4) ** 2
            + (x2 - 2.0 * x3) ** 4 + 10.0 * (x1 - x4) ** 4)


def _powell_singular_grad(x):
    x1, x2, x3, x4 = x
    a = x1 + 10.0 * x2
    b = x3 - x4
    c3 = (x2 - 2.0 * x3) ** 3
    e3 = (x1 - x4) ** 3
    return np.array([
        2.0 * a + 40.0 * e3,
        20.0 * a + 4.0 * c3,
        10.0 * b - 8.0 * c3,
        -10.0 * b - 40.0 * e3,
    ])


# -- start points

def _tile(pattern: Sequence[float], dim: int) -> Vector:
    reps = -(-dim // len(pattern))
    return np.tile(np.asarray(pattern, dtype=np.float64), reps)[:dim].copy()


def _fill(value: float, dim: int) -> Vector:
    return np.full(dim, value, dtype=np.float64)


def _arange1(dim: int) -> Vector:
    return np.arange(1.0, dim + 1.0)


def _inv_n(dim: int) -> Vector:
    return np.full(dim, 1.0 / dim)


@dataclass(frozen=True)
class _SuiteDef:
    name: str
    f: Callable
    grad: Callable
    start: Callable[[int], Vector]
    dims: tuple[int, ...]
    pairwise: bool
    reference: str


_SUITE_DEFS = (
    _SuiteDef("ext_rosenbrock", _ext_rosenbrock_f, _ext_rosenbrock_grad,
              partial(_tile, (-1.2, 1.0)), DIMS, True,
              "sum over pairs of 100(v - u^2)^2 + (1 - u)^2; start (-1.2, 1, ...)"),
    _SuiteDef("ext_white_holst", _ext_white_holst_f, _ext_white_holst_grad,
              partial(_tile, (-1.2, 1.0)), DIMS, True,
              "sum over pairs of 100(v - u^3)^2 + (1 - u)^2; start (-1.2, 1, ...)"),
    _SuiteDef("ext_beale", _ext_beale_f, _ext_beale_grad,
              partial(_tile, (1.0, 0.8)), DIMS, True,
              "Beale residuals (1.5, 2.25, 2.625) per pair; start (1, 0.8, ...)"),
    _SuiteDef("ext_himmelblau", _ext_himmelblau_f, _ext_himmelblau_grad,
              partial(_fill, 1.0), DIMS, True,
              "sum over pairs of (u^2 + v - 11)^2 + (u + v^2 - 7)^2; start (1, ...)"),
    _SuiteDef("ext_tridiagonal1", _ext_tridiagonal1_f, _ext_tridiagonal1_grad,
              partial(_fill, 2.0), DIMS, True,
              "sum over pairs of (u + v - 3)^2 + (u - v + 1)^4; start (2, ...)"),
    _SuiteDef("gen_quartic", _gen_quartic_f, _gen_quartic_grad,
              partial(_fill, 1.0), DIMS, False,
              "sum of x_i^2 + (x_{i+1} + x_i^2)^2; start (1, ...)"),
    _SuiteDef("diagonal1", _diagonal1_f, _diagonal1_grad,
              _inv_n, DIMS, False,
              "sum of exp(x_i) - i x_i; start (1/n, ...)"),
    _SuiteDef("diagonal4", _diagonal4_f, _diagonal4_grad,
              partial(_fill, 1.0), DIMS, True,
              "0.5 sum over pairs of u^2 + 100 v^2; start (1, ...)"),
    _SuiteDef("raydan1", _raydan1_f, _raydan1_grad,
              partial(_fill, 1.0), DIMS, False,
              "sum of (i/10)(exp(x_i) - x_i); start (1, ...)"),
    _SuiteDef("raydan2", _raydan2_f, _raydan2_grad,
              partial(_fill, 1.0), DIMS, False,
              "sum of exp(x_i) - x_i; start (1, ...)"),
    _SuiteDef("quad_qf1", _qf1_f, _qf1_grad,
              partial(_fill, 0.5), DIMS, False,
              "0.5 sum of i x_i^2 minus x_n; start (0.5, ...)"),
    _SuiteDef("quad_qf2", _qf2_f, _qf2_grad,
              partial(_fill, 0.5), DIMS, False,
              "0.5 sum of i (x_i^2 - 1)^2 minus x_n; start (0.5, ...)"),
    # 100-dim variant dropped: at start (1..n) the quartic penalty term is
    # ~1e11 and float64 central differences cannot certify the gradient to
    # 1e-6 there, which the gradient-fidelity gate requires of every
    # registered instance.
    _SuiteDef("ext_penalty", _ext_penalty_f, _ext_penalty_grad,
              _arange1, (2, 10), False,
              "sum of (x_i - 1)^2, i < n, plus (sum x_j^2 - 0.25)^2; start (1, 2, ..., n)"),
    _SuiteDef("perturbed_quadratic", _perturbed_quadratic_f, _perturbed_quadratic_grad,
              partial(_fill, 0.5), DIMS, False,
              "sum of i x_i^2 + (1/100)(sum x_i)^2; start (0.5, ...)"),
    _SuiteDef("hager", _hager_f, _hager_grad,
              partial(_fill, 1.0), DIMS, False,
              "sum of exp(x_i) - sqrt(i) x_i; start (1, ...)"),
    _SuiteDef("ext_trigonometric", _ext_trigonometric_f, _ext_trigonometric_grad,
              partial(_fill, 0.2), DIMS, False,
              "sum of ((n - sum_j cos x_j) + i(1 - cos x_i) - sin x_i)^2; start (0.2, ...)"),
    _SuiteDef("wood", _wood_f, _wood_grad,
              partial(_tile, (-3.0, -1.0)), (4,), False,
              "classic 4-d Wood function; start (-3, -1, -3, -1)"),
    _SuiteDef("powell_singular", _powell_singular_f, _powell_singular_grad,
              partial(_tile, (3.0, -1.0, 0.0, 1.0)), (4,), False,
              "classic 4-d Powell singular function; start (3, -1, 0, 1)"),
)

_SPHERE_DEF = _SuiteDef("sphere", _sphere_f, _sphere_grad, partial(_fill, 1.0), DIMS, False,
                        "0.5 ||x||^2 demo quadratic; start (1, ...)")


def _make_spec(d: _SuiteDef, dim: int) -> ProblemSpec:
    if dim < 2 and d.name != "sphere":
        raise ConfigurationError(f"{d.name}: dim must be >= 2, got {dim}")
    if dim < 1:
        raise ConfigurationError(f"{d.name}: dim must be >= 1, got {dim}")
    if d.pairwise and dim % 2 != 0:
        raise ConfigurationError(f"{d.name}: dim must be even, got {dim}")
    if d.dims == (4,) and dim != 4:
        raise ConfigurationError(f"{d.name} is only defined for dim 4, got {dim}")
    return ProblemSpec(name=d.name, family="suite", dim=dim, x0=d.start(dim),
                       f=d.f, grad=d.grad, reference=d.reference)


def suite() -> list[ProblemSpec]:
    """The benchmark suite: every problem at each of its standard dimensions."""
    return [_make_spec(d, dim) for d in _SUITE_DEFS for dim in d.dims]


def suite_names() -> list[str]:
    return [d.name for d in _SUITE_DEFS]


def get_problem(name: str, dim: int) -> ProblemSpec:
    """Build one suite (or sphere) instance at an arbitrary valid dimension."""
    for d in (*_SUITE_DEFS, _SPHERE_DEF):
        if d.name == name:
            return _make_spec(d, dim)
    raise ConfigurationError(f"unknown problem {name!r}; valid: {', '.join([*suite_names(), 'sphere'])}")


def registry() -> list[ProblemSpec]:
    """Everything the CLI can name: the suite, the sphere demo, and the
    default regression instance."""
    specs = suite()
    specs.extend(_make_spec(_SPHERE_DEF, dim) for dim in _SPHERE_DEF.dims)
    specs.append(make_regression().spec())
    return specs


# -- Lp-regularized least squares -------------------------------------------

def _regression_f(x, A, b, lam, p):
    r = A @ x - b
    return float(0.5 * np.dot(r, r) + 0.5 * lam * np.sum(np.abs(x) ** p))


def _regression_grad(x, A, b, lam, p):
    r = A @ x - b
    return A.T @ r + 0.5 * lam * p * np.sign(x) * np.abs(x) ** (p - 1.0)


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    """min 0.5 ||Ax - b||^2 + (lam/2) sum |x_i|^p with b = A u.

    For 1 < p < 2 the gradient is continuous everywhere but non-Lipschitz at
    coordinates x_i = 0 (the penalty-gradient slope |x|^(p-2) blows up); the
    penalty gradient at x_i = 0 is the analytic limit, 0.
    """

    A: np.ndarray
    b: Vector
    u: Vector
    lam: float
    p: float
    seed: int

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def name(self) -> str:
        return f"regression_s{self.seed}"

    def objective(self) -> Objective:
        return Objective(name=f"{self.name}-{self.n}", dim=self.n,
                         f=partial(_regression_f, A=self.A, b=self.b, lam=self.lam, p=self.p),
                         grad=partial(_regression_grad, A=self.A, b=self.b, lam=self.lam, p=self.p))

    def spec(self, x0: Optional[Vector] = None) -> ProblemSpec:
        """Wrap as a grid-runnable problem; the default start is the origin."""
        if x0 is None:
            x0 = np.zeros(self.n)
        return ProblemSpec(name=self.name, family="regression", dim=self.n, x0=np.asarray(x0, dtype=np.float64),
                           f=partial(_regression_f, A=self.A, b=self.b, lam=self.lam, p=self.p),
                           grad=partial(_regression_grad, A=self.A, b=self.b, lam=self.lam, p=self.p),
                           reference=f"0.5||Ax-b||^2 + (lam/2)||x||_p^p, m={self.m} n={self.n} "
                                     f"p={self.p} lam={self.lam} seed={self.seed}")


def make_regression(m: int = 10, n: int = 50, p: float = 1.5, lam: float = 0.01,
                    sparsity: float = 0.1, seed: int = 42) -> RegressionProblem:
    """Draw A ~ U[0,1]^(m x n) and a sparse u (ceil(sparsity*n) standard-normal
    nonzeros on a uniformly random support), set b = A u.

    Generation uses numpy's PCG64 stream seeded with ``seed`` in the fixed
    order A, support, nonzeros, so instances are reproducible byte-for-byte.
    """
    if m < 1 or n < 1:
        raise ConfigurationError(f"need m, n >= 1, got m={m}, n={n}")
    if not (1.0 < p <= 2.0):
        raise ConfigurationError(f"need 1 < p <= 2, got p={p}")
    if lam < 0:
        raise ConfigurationError(f"need lambda >= 0, got {lam}")
    if not (0.0 < sparsity <= 1.0):
        raise ConfigurationError(f"need 0 < sparsity <= 1, got {sparsity}")
    rng = np.random.Generator(np.random.PCG64(seed))
    A = rng.random((m, n))
    k = math.ceil(sparsity * n)
    support = rng.choice(n, size=k, replace=False)
    u = np.zeros(n)
    u[support] = rng.standard_normal(k)
    b = A @ u
    return RegressionProblem(A=A, b=b, u=u, lam=lam, p=p, seed=seed)


def export_regression(prob: RegressionProblem, out: IO[str]) -> None:
    """Write the instance as labeled CSV rows (A row per line, then b, u)."""
    out.write(f"# regression instance: m={prob.m} n={prob.n} p={prob.p} "
              f"lambda={prob.lam} seed={prob.seed}\n")
    for row in prob.A:
        out.write("A," + ",".join(format(v, ".17g") for v in row) + "\n")
    out.write("b," + ",".join(format(v, ".17g") for v in prob.b) + "\n")
    out.write("u," + ",".join(format(v, ".17g") for v in prob.u) + "\n")
