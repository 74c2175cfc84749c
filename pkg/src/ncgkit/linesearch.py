"""Step lengths satisfying the standard Wolfe-Powell conditions.

The primary search brackets the step with a doubling phase, then shrinks the
bracket with a safeguarded quadratic interpolation: the trial point is the
interpolant minimizer pushed up to at least ``eta*a_lo + (1-eta)*a_hi`` with
``eta = sigma / (2 (sigma - rho))``, which forces the bracket width down by a
factor <= eta per iteration.  A bisection variant (same bracketing, midpoint
trials) is kept as the baseline comparator.

Throughout, a bracket [a_lo, a_hi] carries the running invariants: a_lo
satisfies the sufficient-decrease (Armijo) inequality but not the curvature
inequality, and a_hi violates Armijo.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import Objective, Vector, axpy, dot
from .errors import (
    BracketCorruptionError,
    ConfigurationError,
    LineSearchStallError,
    NonDescentError,
    UnboundedDescentError,
)

MAX_SHRINK_ITERS = 100
WIDTH_FLOOR = 1e-16
MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class WolfeParams:
    """Armijo slope rho and curvature fraction sigma, 0 < 2 rho < sigma < 1."""

    rho: float = 0.1
    sigma: float = 0.4

    def __post_init__(self):
        if not (0.0 < 2.0 * self.rho < self.sigma < 1.0):
            raise ConfigurationError(f"need 0 < 2*rho < sigma < 1, got rho={self.rho}, sigma={self.sigma}")


def safeguard_eta(w: WolfeParams) -> float:
    """Shrink factor eta = sigma / (2 (sigma - rho)), in (1/2, 1)."""
    return w.sigma / (2.0 * (w.sigma - w.rho))


def _require_descent(slope0: float) -> None:
    if not slope0 < 0.0:
        raise NonDescentError(f"initial directional derivative must be negative, got {slope0}")


def armijo_holds(f0: float, slope0: float, alpha: float, f_alpha: float, w: WolfeParams) -> bool:
    """Sufficient decrease: f(x + alpha d) <= f(x) + rho * alpha * <g, d>."""
    _require_descent(slope0)
    return f_alpha <= f0 + w.rho * alpha * slope0


def curvature_holds(slope0: float, slope_alpha: float, w: WolfeParams) -> bool:
    """Curvature: <grad(x + alpha d), d> >= sigma * <g, d>."""
    _require_descent(slope0)
    return slope_alpha >= w.sigma * slope0


def strong_curvature_holds(slope0: float, slope_alpha: float, w: WolfeParams) -> bool:
    """Strong curvature: |<grad(x + alpha d), d>| <= -sigma * <g, d>."""
    _require_descent(slope0)
    return abs(slope_alpha) <= -w.sigma * slope0


def goldstein_lower_holds(f0: float, slope0: float, alpha: float, f_alpha: float, w: WolfeParams) -> bool:
    """Goldstein lower bound: f(x + alpha d) >= f(x) + (1 - rho) * alpha * <g, d>."""
    _require_descent(slope0)
    return f_alpha >= f0 + (1.0 - w.rho) * alpha * slope0


@dataclass
class Bracket:
    """Interval state: endpoint data for [a_lo, a_hi].

    f_lo and slope_lo are the objective value and directional derivative at
    a_lo; f_hi is the value at a_hi (its slope is never needed).
    """

    a_lo: float
    a_hi: float
    f_lo: float
    slope_lo: float
    f_hi: float

    @property
    def width(self) -> float:
        return self.a_hi - self.a_lo


@dataclass
class LineSearchResult:
    """An accepted step: both Wolfe-Powell inequalities hold at alpha."""

    alpha: float
    x_new: Vector
    f_new: float
    g_new: Vector
    inner_iters: int
    f_evals: int
    g_evals: int


class LineSearchObserver:
    """Diagnostics hook; subclass and pass to the searches to record
    bracket shrink ratios and accepted steps (used by the acceptance suite)."""

    def on_shrink(self, width_before: float, width_after: float) -> None:  # pragma: no cover
        pass

    def on_accept(self, f0: float, slope0: float, alpha: float, f_alpha: float, slope_alpha: float) -> None:  # pragma: no cover
        pass


class _Counter:
    __slots__ = ("f_evals", "g_evals")

    def __init__(self):
        self.f_evals = 0
        self.g_evals = 0


def _bracket_by_doubling(obj: Objective, x: Vector, f0: float, slope0: float,
                         d: Vector, w: WolfeParams, counter: _Counter) -> tuple[Bracket, float, float]:
    """Double alpha = eta * 2^p until Armijo first fails; bracket [0, alpha].

    The lower endpoint stays at 0 (where Armijo holds with equality and the
    curvature inequality fails for any sigma < 1), so no gradient is ever
    evaluated during bracketing.  Returns the bracket plus the best
    Armijo-satisfying trial seen, for stall reporting.
    """
    eta = safeguard_eta(w)
    best_alpha, best_f = 0.0, f0
    for p in range(MAX_DOUBLINGS + 1):
        alpha = eta * 2.0**p
        f_trial = obj.value(axpy(alpha, d, x))
        counter.f_evals += 1
        if not armijo_holds(f0, slope0, alpha, f_trial, w):
            return Bracket(a_lo=0.0, a_hi=alpha, f_lo=f0, slope_lo=slope0, f_hi=f_trial), best_alpha, best_f
        if f_trial < best_f:
            best_alpha, best_f = alpha, f_trial
    raise UnboundedDescentError(
        f"{obj.name}: sufficient decrease still holds at alpha={eta * 2.0**MAX_DOUBLINGS:.3g}; "
        "objective looks unbounded below along the search direction")


def initial_bracket(obj: Objective, x: Vector, f0: float, g0: Vector, d: Vector, w: WolfeParams) -> Bracket:
    """Public bracketing step: [0, first Armijo-violating eta * 2^p]."""
    slope0 = dot(g0, d)
    _require_descent(slope0)
    return _bracket_by_doubling(obj, x, f0, slope0, d, w, _Counter())[0]


def interp_min(b: Bracket) -> float:
    """Minimizer of the quadratic matching f_lo, slope_lo and f_hi.

    c = a_lo + (width/2) * (-width * slope_lo) / (f_hi - f_lo - width * slope_lo)
    """
    width = b.width
    denom = b.f_hi - b.f_lo - width * b.slope_lo
    if not denom > 0.0:
        raise BracketCorruptionError(f"non-positive interpolation denominator {denom}")
    return b.a_lo + 0.5 * width * (-width * b.slope_lo) / denom


def safeguard(c: float, b: Bracket, eta: float) -> float:
    """max{c, eta*a_lo + (1-eta)*a_hi}: keeps both sub-intervals <= eta*width."""
    return max(c, eta * b.a_lo + (1.0 - eta) * b.a_hi)


def _check_bracket(b: Bracket, f0: float, slope0: float, w: WolfeParams) -> None:
    """Re-assert the running bracket invariants from the stored endpoint data."""
    if not b.a_lo < b.a_hi:
        raise BracketCorruptionError(f"bracket endpoints out of order: [{b.a_lo}, {b.a_hi}]")
    if not armijo_holds(f0, slope0, b.a_lo, b.f_lo, w):
        raise BracketCorruptionError("lower endpoint lost the sufficient-decrease property")
    if curvature_holds(slope0, b.slope_lo, w):
        raise BracketCorruptionError("lower endpoint satisfies curvature; it should have been accepted")
    if armijo_holds(f0, slope0, b.a_hi, b.f_hi, w):
        raise BracketCorruptionError("upper endpoint satisfies sufficient decrease")


def _search(obj: Objective, x: Vector, f0: float, g0: Vector, d: Vector, w: WolfeParams,
            trial_rule: Callable[[Bracket, float], float],
            observer: Optional[LineSearchObserver]) -> LineSearchResult:
    slope0 = dot(g0, d)
    _require_descent(slope0)
    counter = _Counter()
    bracket, best_alpha, best_f = _bracket_by_doubling(obj, x, f0, slope0, d, w, counter)
    eta = safeguard_eta(w)

    for inner in range(1, MAX_SHRINK_ITERS + 1):
        _check_bracket(bracket, f0, slope0, w)
        c = trial_rule(bracket, eta)
        if not bracket.a_lo < c < bracket.a_hi:
            break  # trial collapsed onto an endpoint: floating-point exhaustion
        x_trial = axpy(c, d, x)
        f_trial = obj.value(x_trial)
        counter.f_evals += 1
        width_before = bracket.width
        if not armijo_holds(f0, slope0, c, f_trial, w):
            bracket.a_hi = c
            bracket.f_hi = f_trial
        else:
            g_trial = obj.gradient(x_trial)
            counter.g_evals += 1
            slope_trial = dot(g_trial, d)
            if curvature_holds(slope0, slope_trial, w):
                if observer is not None:
                    observer.on_accept(f0, slope0, c, f_trial, slope_trial)
                return LineSearchResult(alpha=c, x_new=x_trial, f_new=f_trial, g_new=g_trial,
                                        inner_iters=inner, f_evals=counter.f_evals, g_evals=counter.g_evals)
            if f_trial < best_f:
                best_alpha, best_f = c, f_trial
            bracket.a_lo = c
            bracket.f_lo = f_trial
            bracket.slope_lo = slope_trial
        if observer is not None:
            observer.on_shrink(width_before, bracket.width)
        if bracket.width < WIDTH_FLOOR * max(1.0, bracket.a_hi):
            break
    raise LineSearchStallError(
        f"{obj.name}: no Wolfe point found (bracket [{bracket.a_lo}, {bracket.a_hi}])",
        best_alpha=best_alpha if best_alpha > 0.0 else None,
        best_f=best_f, f_evals=counter.f_evals, g_evals=counter.g_evals)


def _interp_trial(b: Bracket, eta: float) -> float:
    c = interp_min(b)
    # consequence of the bracket inequalities: the interpolant ratio is
    # bounded by sigma/(sigma-rho) = 2*eta, so c < a_lo + eta*width
    ratio = 2.0 * (c - b.a_lo) / b.width
    if not ratio < 2.0 * eta:
        raise BracketCorruptionError(f"interpolant ratio {ratio} >= sigma/(sigma-rho) = {2.0 * eta}")
    return safeguard(c, b, eta)


def _bisect_trial(b: Bracket, eta: float) -> float:
    return 0.5 * (b.a_lo + b.a_hi)


def wolfe_search_interp(obj: Objective, x: Vector, f0: float, g0: Vector, d: Vector, w: WolfeParams,
                        observer: Optional[LineSearchObserver] = None) -> LineSearchResult:
    """Safeguarded quadratic-interpolation search for a weak-Wolfe step."""
    return _search(obj, x, f0, g0, d, w, _interp_trial, observer)


def wolfe_search_bisect(obj: Objective, x: Vector, f0: float, g0: Vector, d: Vector, w: WolfeParams,
                        observer: Optional[LineSearchObserver] = None) -> LineSearchResult:
    """Bisection baseline: identical bracketing, midpoint trial points."""
    return _search(obj, x, f0, g0, d, w, _bisect_trial, observer)


SEARCHES = {
    "interp": wolfe_search_interp,
    "bisect": wolfe_search_bisect,
}


def canonical_linesearch(name: str) -> str:
    key = name.strip().lower()
    if key not in SEARCHES:
        raise ConfigurationError(f"unknown line search {name!r}; valid: {', '.join(sorted(SEARCHES))}")
    return key
