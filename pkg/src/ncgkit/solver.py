"""The NCG driver: line search + direction update until the gradient test.

Per iteration: take a weak-Wolfe step along d, test ||g||_inf against the
tolerance, then compute beta and the next direction.  Degenerate beta
denominators and numerically non-descent directions are recovered by a
steepest-descent restart (d = -g); for MPRP the adequate-descent guard can
only fail through floating-point noise, and such restarts are counted
separately so the benchmark can verify there are none.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Optional

from .core import Objective, Vector, as_vector, dot, norm2, norm_inf
from .directions import BETA_RULES, DirectionParams, canonical_method, mu_of, next_direction
from .errors import (
    ConfigurationError,
    DegenerateDirectionError,
    DimensionMismatchError,
    EvaluationError,
    LineSearchStallError,
    UnboundedDescentError,
)
from .linesearch import SEARCHES, LineSearchObserver, WolfeParams, canonical_linesearch

CONVERGED = "Converged"
MAX_ITERS = "MaxIters"
LINE_SEARCH_STALL = "LineSearchStall"
EVALUATION_ERROR = "EvaluationError"

RESTART_SENTINEL = "restart"
DESCENT_SLACK = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    method: str = "MPRP"
    linesearch: str = "interp"
    epsilon: float = 1e-5
    max_iters: int = 20000
    wolfe: WolfeParams = field(default_factory=WolfeParams)
    dirparams: DirectionParams = field(default_factory=DirectionParams)

    def __post_init__(self):
        object.__setattr__(self, "method", canonical_method(self.method))
        object.__setattr__(self, "linesearch", canonical_linesearch(self.linesearch))
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass
class IterationRecord:
    k: int
    f: float
    gnorm_inf: float
    alpha: float
    beta: float          # NaN when no direction update happened (converged)
    restarted: bool      # direction was replaced by -g
    ls_iters: int
    f_evals: int         # cumulative
    g_evals: int         # cumulative


TRACE_COLUMNS = ("k", "f", "gnorm_inf", "alpha", "beta", "ls_iters", "f_evals", "g_evals")


def _fmt(v: float) -> str:
    return format(v, ".17g")


@dataclass
class SolverTrace:
    records: list[IterationRecord]
    status: str
    x_final: Vector
    f_final: float
    gnorm_final: float
    f_evals: int
    g_evals: int
    descent_restarts: int = 0
    degenerate_restarts: int = 0
    failure: Optional[str] = None

    @property
    def iterations(self) -> int:
        return len(self.records)

    def write_csv(self, out: IO[str]) -> None:
        out.write(",".join(TRACE_COLUMNS) + "\n")
        for r in self.records:
            beta = RESTART_SENTINEL if r.restarted else ("" if math.isnan(r.beta) else _fmt(r.beta))
            out.write(f"{r.k},{_fmt(r.f)},{_fmt(r.gnorm_inf)},{_fmt(r.alpha)},{beta},"
                      f"{r.ls_iters},{r.f_evals},{r.g_evals}\n")


def descent_guard(g: Vector, d: Vector, mu: float) -> bool:
    """True iff <d, g> <= -mu ||d|| ||g|| up to 1e-10 relative slack."""
    scale = norm2(d) * norm2(g)
    return dot(d, g) <= (-mu + DESCENT_SLACK) * scale


def minimize(obj: Objective, x0, cfg: SolverConfig = SolverConfig(),
             ls_observer: Optional[LineSearchObserver] = None) -> SolverTrace:
    """Run the NCG iteration from x0 until ||g||_inf < epsilon or a cap/error.

    Identical inputs produce bit-identical traces.  Line-search stalls,
    unbounded descent and non-finite objective values terminate the run with
    the corresponding status and the trace collected so far; they never
    raise.
    """
    x = as_vector(x0)
    if len(x) != obj.dim:
        raise DimensionMismatchError(f"x0 has length {len(x)}, objective expects {obj.dim}")

    search = SEARCHES[cfg.linesearch]
    rule = BETA_RULES[cfg.method]
    mu = mu_of(cfg.dirparams)
    records: list[IterationRecord] = []
    descent_restarts = 0
    degenerate_restarts = 0

    def finish(status, f, g_inf, fe, ge, failure=None):
        return SolverTrace(records=records, status=status, x_final=x, f_final=f,
                           gnorm_final=g_inf, f_evals=fe, g_evals=ge,
                           descent_restarts=descent_restarts,
                           degenerate_restarts=degenerate_restarts, failure=failure)

    try:
        f = obj.value(x)
        g = obj.gradient(x)
    except EvaluationError as e:
        return finish(EVALUATION_ERROR, math.nan, math.nan, 1, 1, failure=str(e))
    f_evals, g_evals = 1, 1
    g_inf = norm_inf(g)
    if g_inf < cfg.epsilon:
        # Already optimal; a line search from a zero-ish gradient would
        # violate the descent precondition.
        return finish(CONVERGED, f, g_inf, f_evals, g_evals)

    d = -g
    for k in range(1, cfg.max_iters + 1):
        try:
            res = search(obj, x, f, g, d, cfg.wolfe, ls_observer)
        except LineSearchStallError as e:
            return finish(LINE_SEARCH_STALL, f, g_inf,
                          f_evals + e.f_evals, g_evals + e.g_evals, failure=str(e))
        except UnboundedDescentError as e:
            return finish(LINE_SEARCH_STALL, f, g_inf, f_evals, g_evals, failure=str(e))
        except EvaluationError as e:
            return finish(EVALUATION_ERROR, f, g_inf, f_evals, g_evals, failure=str(e))
        f_evals += res.f_evals
        g_evals += res.g_evals
        x, f = res.x_new, res.f_new
        g_new = res.g_new
        g_inf = norm_inf(g_new)

        if g_inf < cfg.epsilon:
            records.append(IterationRecord(k=k, f=f, gnorm_inf=g_inf, alpha=res.alpha,
                                           beta=math.nan, restarted=False, ls_iters=res.inner_iters,
                                           f_evals=f_evals, g_evals=g_evals))
            g = g_new
            return finish(CONVERGED, f, g_inf, f_evals, g_evals)

        restarted = False
        try:
            beta = rule(g, g_new, d, cfg.dirparams)
            d_next = next_direction(g_new, d, beta)
        except DegenerateDirectionError:
            beta = math.nan
            d_next = -g_new
            restarted = True
            degenerate_restarts += 1
        if not restarted:
            if cfg.method == "MPRP":
                ok = descent_guard(g_new, d_next, mu)
            else:
                ok = dot(g_new, d_next) < 0.0
            if not ok:
                d_next = -g_new
                restarted = True
                descent_restarts += 1

        records.append(IterationRecord(k=k, f=f, gnorm_inf=g_inf, alpha=res.alpha,
                                       beta=beta, restarted=restarted, ls_iters=res.inner_iters,
                                       f_evals=f_evals, g_evals=g_evals))
        g = g_new
        d = d_next

    return finish(MAX_ITERS, f, g_inf, f_evals, g_evals)
