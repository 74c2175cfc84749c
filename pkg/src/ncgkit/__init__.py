"""Nonlinear conjugate gradient toolkit.

Implements an adequate-descent PRP-type direction rule (MPRP) alongside the
classical FR/HS/PRP/PRP+/DY/HZ/PRP-Y rules, a safeguarded quadratic
interpolation line search for the weak Wolfe-Powell conditions (plus a
bisection baseline), a classical test-function suite, an Lp-regularized
regression problem with a non-Lipschitz gradient, and a Dolan-More
performance-profile benchmark harness.
"""
from .bench import ProfileTable, RunRecord, profile, run_grid
from .core import Objective, Vector, axpy, check_gradient, dot, kernel_backend, norm2, norm_inf
from .directions import (
    DirectionParams,
    beta_dy,
    beta_fr,
    beta_hs,
    beta_hz,
    beta_mprp,
    beta_prp,
    beta_prp_plus,
    beta_prp_y,
    compute_beta,
    mu_of,
    next_direction,
)
from .linesearch import (
    Bracket,
    LineSearchResult,
    WolfeParams,
    armijo_holds,
    curvature_holds,
    goldstein_lower_holds,
    initial_bracket,
    interp_min,
    safeguard,
    safeguard_eta,
    strong_curvature_holds,
    wolfe_search_bisect,
    wolfe_search_interp,
)
from .problems import ProblemSpec, RegressionProblem, make_regression, registry, suite
from .solver import SolverConfig, SolverTrace, descent_guard, minimize

__version__ = "0.1.0"

__all__ = [
    "Bracket", "DirectionParams", "LineSearchResult", "Objective", "ProblemSpec",
    "ProfileTable", "RegressionProblem", "RunRecord", "SolverConfig", "SolverTrace",
    "Vector", "WolfeParams", "armijo_holds", "axpy", "beta_dy", "beta_fr", "beta_hs",
    "beta_hz", "beta_mprp", "beta_prp", "beta_prp_plus", "beta_prp_y", "check_gradient",
    "compute_beta", "curvature_holds", "descent_guard", "dot", "goldstein_lower_holds",
    "initial_bracket", "interp_min", "kernel_backend", "make_regression", "minimize",
    "mu_of", "next_direction", "norm2", "norm_inf", "profile", "registry", "run_grid",
    "safeguard", "safeguard_eta", "strong_curvature_holds", "suite",
    "wolfe_search_bisect", "wolfe_search_interp",
]
