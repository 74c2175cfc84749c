"""Conjugate coefficients and search-direction updates.

Every rule consumes the previous gradient ``g_prev``, the new gradient
``g_next`` and the previous direction ``d_prev`` and returns the scalar beta
for ``d_next = -g_next + beta * d_prev``.  The MPRP rule additionally
guarantees the adequate-descent angle bound

    <d_next, g_next> <= -mu * ||d_next|| * ||g_next||,
    mu = (4 nu - 1) / (4 nu (1 + kappa)),

which is what lets the solver drop the Lipschitz-gradient assumption.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Vector, combine, dot, norm2
from .errors import ConfigurationError, DegenerateDirectionError


@dataclass(frozen=True)
class DirectionParams:
    """Scalar knobs of the modified rules.

    nu      curvature weight of the MPRP / augmented-PRP correction; must
            exceed 1/4 for the descent bound to hold
    kappa   cap on |beta| * ||d_prev|| / ||g_next|| in the MPRP rule
    eta_hz  lower-clamp constant of the Hager-Zhang rule
    """

    nu: float = 0.8
    kappa: float = 10.0
    eta_hz: float = 0.01

    def __post_init__(self):
        if not self.nu > 0.25:
            raise ConfigurationError(f"nu must be > 1/4, got {self.nu}")
        if not self.kappa > 0:
            raise ConfigurationError(f"kappa must be > 0, got {self.kappa}")
        if not self.eta_hz > 0:
            raise ConfigurationError(f"eta_hz must be > 0, got {self.eta_hz}")


def mu_of(p: DirectionParams) -> float:
    """Adequate-descent constant (4 nu - 1) / (4 nu (1 + kappa))."""
    return (4.0 * p.nu - 1.0) / (4.0 * p.nu * (1.0 + p.kappa))


def _gg_prev(g_prev: Vector) -> float:
    gg = dot(g_prev, g_prev)
    if gg == 0.0:
        raise DegenerateDirectionError("previous gradient has zero norm")
    return gg


def _dy(d_prev: Vector, y: Vector) -> float:
    dy = dot(d_prev, y)
    if dy == 0.0:
        raise DegenerateDirectionError("<d_prev, y> is zero")
    return dy


def beta_fr(g_prev: Vector, g_next: Vector, d_prev: Vector) -> float:
    """Fletcher-Reeves: ||g_next||^2 / ||g_prev||^2."""
    return dot(g_next, g_next) / _gg_prev(g_prev)


def beta_hs(g_prev: Vector, g_next: Vector, d_prev: Vector) -> float:
    """Hestenes-Stiefel: <g_next, y> / <d_prev, y> with y = g_next - g_prev."""
    y = combine(1.0, g_next, -1.0, g_prev)
    return dot(g_next, y) / _dy(d_prev, y)


def beta_prp(g_prev: Vector, g_next: Vector, d_prev: Vector) -> float:
    """Polak-Ribiere-Polyak: <g_next, y> / ||g_prev||^2."""
    y = combine(1.0, g_next, -1.0, g_prev)
    return dot(g_next, y) / _gg_prev(g_prev)


def beta_prp_plus(g_prev: Vector, g_next: Vector, d_prev: Vector) -> float:
    """Nonnegative PRP: max{beta_prp, 0}."""
    return max(beta_prp(g_prev, g_next, d_prev), 0.0)


def beta_dy(g_prev: Vector, g_next: Vector, d_prev: Vector) -> float:
    """Dai-Yuan: ||g_next||^2 / <d_prev, y>."""
    y = combine(1.0, g_next, -1.0, g_prev)
    return dot(g_next, g_next) / _dy(d_prev, y)


def beta_hz(g_prev: Vector, g_next: Vector, d_prev: Vector, p: DirectionParams) -> float:
    """Hager-Zhang: HS minus a curvature correction, clamped from below."""
    y = combine(1.0, g_next, -1.0, g_prev)
    dy = _dy(d_prev, y)
    hs = dot(g_next, y) / dy
    corrected = hs - 2.0 * dot(y, y) * dot(g_next, d_prev) / (dy * dy)
    clamp = -1.0 / (norm2(d_prev) * min(p.eta_hz, norm2(g_prev)))
    return max(corrected, clamp)


def beta_prp_y(g_prev: Vector, g_next: Vector, d_prev: Vector, p: DirectionParams) -> float:
    """Augmented PRP: max{beta_prp - nu ||y||^2 <g_next, d_prev> / ||g_prev||^4, 0}."""
    y = combine(1.0, g_next, -1.0, g_prev)
    gg = _gg_prev(g_prev)
    raw = dot(g_next, y) / gg - p.nu * dot(y, y) * dot(g_next, d_prev) / (gg * gg)
    return max(raw, 0.0)


def beta_mprp(g_prev: Vector, g_next: Vector, d_prev: Vector, p: DirectionParams) -> float:
    """Capped augmented PRP with the adequate-descent guarantee.

    beta = min{ max{<g_next, y - (nu ||y||^2 / ||g_prev||^2) d_prev>, 0} / ||g_prev||^2,
                kappa ||g_next|| / ||d_prev|| }
    """
    gg = _gg_prev(g_prev)
    y = combine(1.0, g_next, -1.0, g_prev)
    inner = combine(1.0, y, -p.nu * dot(y, y) / gg, d_prev)
    candidate = max(dot(g_next, inner), 0.0) / gg
    dn = norm2(d_prev)
    if dn == 0.0:
        raise DegenerateDirectionError("previous direction has zero norm")
    return min(candidate, p.kappa * norm2(g_next) / dn)


def next_direction(g_next: Vector, d_prev: Vector, beta: float) -> Vector:
    """d_next = -g_next + beta * d_prev."""
    return combine(-1.0, g_next, beta, d_prev)


def _fr(gp, gn, dp, p):
    return beta_fr(gp, gn, dp)


def _hs(gp, gn, dp, p):
    return beta_hs(gp, gn, dp)


def _prp(gp, gn, dp, p):
    return beta_prp(gp, gn, dp)


def _prp_plus(gp, gn, dp, p):
    return beta_prp_plus(gp, gn, dp)


def _dy_rule(gp, gn, dp, p):
    return beta_dy(gp, gn, dp)


BETA_RULES = {
    "FR": _fr,
    "HS": _hs,
    "PRP": _prp,
    "PRP+": _prp_plus,
    "DY": _dy_rule,
    "HZ": beta_hz,
    "PRP-Y": beta_prp_y,
    "MPRP": beta_mprp,
}

_ALIASES = {"PRPY": "PRP-Y", "PRPPLUS": "PRP+"}


def canonical_method(name: str) -> str:
    """Normalize a user-supplied method name ('prpy' -> 'PRP-Y')."""
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    if key not in BETA_RULES:
        raise ConfigurationError(f"unknown method {name!r}; valid: {', '.join(sorted(BETA_RULES))}")
    return key


def compute_beta(method: str, g_prev: Vector, g_next: Vector, d_prev: Vector, p: DirectionParams) -> float:
    """Dispatch to the named beta rule."""
    return BETA_RULES[canonical_method(method)](g_prev, g_next, d_prev, p)
