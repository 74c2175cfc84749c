import numpy as np
import pytest

from ncgkit.core import dot, norm2
from ncgkit.directions import (
    DirectionParams,
    beta_dy,
    beta_fr,
    beta_hs,
    beta_hz,
    beta_mprp,
    beta_prp,
    beta_prp_plus,
    beta_prp_y,
    canonical_method,
    compute_beta,
    mu_of,
    next_direction,
)
from ncgkit.errors import ConfigurationError, DegenerateDirectionError


def v(*coords):
    return np.array(coords, dtype=np.float64)


PARAMS = DirectionParams()  # nu=0.8, kappa=10, eta_hz=0.01


def random_triple(rng, dim):
    while True:
        g, gn, d = (rng.standard_normal(dim) for _ in range(3))
        if norm2(g) > 0 and norm2(d) > 0:
            return g, gn, d


class TestParams:
    def test_defaults(self):
        assert PARAMS.nu == 0.8 and PARAMS.kappa == 10.0 and PARAMS.eta_hz == 0.01

    @pytest.mark.parametrize("kwargs", [
        {"nu": 0.25}, {"nu": 0.0}, {"kappa": 0.0}, {"kappa": -1.0}, {"eta_hz": 0.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            DirectionParams(**kwargs)


class TestMu:
    def test_paper_parameters(self):
        # (4*0.8 - 1) / (4*0.8*(1 + 10)) = 2.2/35.2
        assert mu_of(PARAMS) == pytest.approx(0.0625, rel=1e-15)

    def test_large_nu_limit(self):
        assert mu_of(DirectionParams(nu=1e12, kappa=10.0)) == pytest.approx(1.0 / 11.0, rel=1e-9)

    def test_nu_boundary_limit(self):
        assert mu_of(DirectionParams(nu=0.25 + 1e-12, kappa=10.0)) < 1e-10

    def test_in_unit_interval(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            p = DirectionParams(nu=0.25 + float(rng.random() * 10 + 1e-6), kappa=float(rng.random() * 20 + 1e-6))
            assert 0.0 < mu_of(p) < 1.0


class TestClassicalRules:
    def test_fr_hand(self):
        assert beta_fr(v(1, 0), v(0, 2), v(-1, 0)) == 4.0

    def test_prp_zero_when_gradient_unchanged(self):
        g = v(0.3, -0.7)
        assert beta_prp(g, g.copy(), v(-1, 0)) == 0.0

    def test_prp_hand(self):
        # y = (-1, 1), <g_next, y> = 1, ||g_prev||^2 = 1
        assert beta_prp(v(1, 0), v(0, 1), v(-1, 0)) == 1.0

    def test_hs_hand(self):
        # y = (-1, 2), <g_next, y> = 4, <d, y> = 1
        assert beta_hs(v(1, 0), v(0, 2), v(-1, 0)) == 4.0

    def test_dy_standard_formula(self):
        # ||g_next||^2 = 4, <d, y> = 1
        assert beta_dy(v(1, 0), v(0, 2), v(-1, 0)) == 4.0

    @pytest.mark.parametrize("rule", [beta_hs, beta_dy])
    def test_zero_dy_denominator(self, rule):
        # y = (1, 0) orthogonal to d = (0, 1)
        with pytest.raises(DegenerateDirectionError):
            rule(v(1, 0), v(2, 0), v(0, 1))

    def test_zero_gradient_denominator(self):
        with pytest.raises(DegenerateDirectionError):
            beta_fr(v(0, 0), v(1, 0), v(-1, 0))


class TestPrpPlus:
    def test_negative_clamped(self):
        # beta_prp = (||g_next||^2 - <g_next, g_prev>)/1 = 0.81 - 0.9 < 0
        g, gn, d = v(1, 0), v(0.9, 0), v(-1, 0)
        assert beta_prp(g, gn, d) == pytest.approx(-0.09, rel=1e-14)
        assert beta_prp_plus(g, gn, d) == 0.0

    def test_positive_passthrough(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            g, gn, d = random_triple(rng, int(rng.integers(2, 8)))
            raw = beta_prp(g, gn, d)
            assert beta_prp_plus(g, gn, d) == max(raw, 0.0)

    def test_zero_when_gradient_unchanged(self):
        g = v(1.0, 2.0)
        assert beta_prp_plus(g, g.copy(), v(-1, 0)) == 0.0


class TestHagerZhang:
    def test_hand_value(self):
        # correction term vanishes (<g_next, d> = 0); HS part = 1
        assert beta_hz(v(1, 0), v(0, 1), v(-1, 0), PARAMS) == 1.0

    def test_correction_vanishes_when_orthogonal(self):
        g, gn, d = v(1, 0), v(0, 2), v(-1, 0)
        hs = beta_hs(g, gn, d)
        clamp = -1.0 / (norm2(d) * min(PARAMS.eta_hz, norm2(g)))
        assert beta_hz(g, gn, d, PARAMS) == max(hs, clamp)

    def test_lower_clamp_constructed(self):
        # <d, y> tiny makes the HS part -1000, below the clamp -100
        d, y, gn = v(1, 0), v(1e-3, -1), v(0, 1)
        g = gn - y
        assert beta_hz(g, gn, d, PARAMS) == -1.0 / (1.0 * min(0.01, norm2(g)))

    def test_lower_clamp_found_by_search(self):
        rng = np.random.default_rng(6)
        hits = 0
        for _ in range(2000):
            g, gn, d = random_triple(rng, 2)
            g, gn, d = 0.05 * g, 0.05 * gn, d
            y = gn - g
            dy = dot(d, y)
            if dy == 0.0:
                continue
            first = dot(gn, y) / dy - 2.0 * dot(y, y) * dot(gn, d) / dy**2
            clamp = -1.0 / (norm2(d) * min(PARAMS.eta_hz, norm2(g)))
            if first < clamp:
                hits += 1
                assert beta_hz(g, gn, d, PARAMS) == clamp
        assert hits > 0

    def test_zero_denominator(self):
        with pytest.raises(DegenerateDirectionError):
            beta_hz(v(1, 0), v(2, 0), v(0, 1), PARAMS)


class TestPrpY:
    def test_hand_value(self):
        # PRP part 1, correction vanishes since <g_next, d> = 0
        assert beta_prp_y(v(1, 0), v(0, 1), v(-1, 0), PARAMS) == 1.0

    def test_zero_when_gradient_unchanged(self):
        g = v(0.5, 0.5)
        assert beta_prp_y(g, g.copy(), v(-1, 0), PARAMS) == 0.0

    def test_equals_prp_plus_when_orthogonal(self):
        # exact structural zeros: d lives on the first axis, g_next on the rest
        rng = np.random.default_rng(7)
        for _ in range(100):
            n = int(rng.integers(2, 6))
            d = np.zeros(n)
            d[0] = rng.standard_normal() or 1.0
            gn = rng.standard_normal(n)
            gn[0] = 0.0
            g, _, _ = random_triple(rng, n)
            assert beta_prp_y(g, gn, d, PARAMS) == beta_prp_plus(g, gn, d)

    def test_nonnegative(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            g, gn, d = random_triple(rng, 3)
            assert beta_prp_y(g, gn, d, PARAMS) >= 0.0


class TestMprp:
    def test_zero_when_stationary_gradient(self):
        g = v(1.0, -2.0)
        assert beta_mprp(g, g.copy(), -g, PARAMS) == 0.0

    def test_hand_value(self):
        # inner vector (0.6, 1), numerator 1, candidate 1, cap 10
        assert beta_mprp(v(1, 0), v(0, 1), v(-1, 0), PARAMS) == 1.0

    def test_cap_active(self):
        # candidate 100 exceeds cap 10*1/1
        assert beta_mprp(v(0.1, 0), v(0, 1), v(-1, 0), PARAMS) == 10.0

    def test_cap_exact_and_nonnegative(self):
        rng = np.random.default_rng(9)
        for _ in range(2000):
            g, gn, d = random_triple(rng, int(rng.integers(2, 51)))
            beta = beta_mprp(g, gn, d, PARAMS)
            assert 0.0 <= beta <= PARAMS.kappa * norm2(gn) / norm2(d)

    def test_adequate_descent(self):
        mu = mu_of(PARAMS)
        rng = np.random.default_rng(10)
        for _ in range(2000):
            g, gn, d = random_triple(rng, int(rng.integers(2, 51)))
            dn = next_direction(gn, d, beta_mprp(g, gn, d, PARAMS))
            scale = norm2(dn) * norm2(gn)
            assert dot(dn, gn) <= -mu * scale + 1e-10 * scale

    def test_direction_norm_bound(self):
        rng = np.random.default_rng(11)
        for _ in range(2000):
            g, gn, d = random_triple(rng, int(rng.integers(2, 20)))
            dn = next_direction(gn, d, beta_mprp(g, gn, d, PARAMS))
            assert norm2(dn) <= (1.0 + PARAMS.kappa) * norm2(gn) * (1.0 + 1e-12)

    def test_no_larger_than_uncapped_augmented_prp(self):
        rng = np.random.default_rng(12)
        for _ in range(2000):
            g, gn, d = random_triple(rng, int(rng.integers(2, 20)))
            y = gn - g
            gg = dot(g, g)
            raw = dot(gn, y) / gg - PARAMS.nu * dot(y, y) * dot(gn, d) / gg**2
            bound = max(raw, 0.0)
            # tiny slack: the two expressions associate the same arithmetic differently
            assert beta_mprp(g, gn, d, PARAMS) <= bound + 1e-12 * max(1.0, abs(bound))


class TestNextDirection:
    def test_steepest_descent_at_zero_beta(self):
        gn = v(0.3, -0.4)
        np.testing.assert_array_equal(next_direction(gn, v(9, 9), 0.0), -gn)

    def test_mprp_hand_direction(self):
        gn, d = v(0, 1), v(-1, 0)
        dn = next_direction(gn, d, 1.0)
        np.testing.assert_array_equal(dn, v(-1, -1))
        mu = mu_of(PARAMS)
        assert dot(dn, gn) <= -mu * norm2(dn) * norm2(gn)


class TestRotationInvariance:
    @pytest.mark.parametrize("rule", [beta_fr, beta_prp])
    def test_classical(self, rule):
        rng = np.random.default_rng(13)
        for _ in range(100):
            g, gn, d = random_triple(rng, 2)
            theta = float(rng.uniform(0, 2 * np.pi))
            q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
            assert rule(q @ g, q @ gn, q @ d) == pytest.approx(rule(g, gn, d), rel=1e-10)

    def test_mprp(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            g, gn, d = random_triple(rng, 2)
            theta = float(rng.uniform(0, 2 * np.pi))
            q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
            rotated = beta_mprp(q @ g, q @ gn, q @ d, PARAMS)
            assert rotated == pytest.approx(beta_mprp(g, gn, d, PARAMS), rel=1e-10, abs=1e-14)


class TestDispatch:
    def test_canonical_names(self):
        assert canonical_method("prpy") == "PRP-Y"
        assert canonical_method("prp-y") == "PRP-Y"
        assert canonical_method("mprp") == "MPRP"
        assert canonical_method("prp+") == "PRP+"

    def test_unknown_method(self):
        with pytest.raises(ConfigurationError, match="valid"):
            canonical_method("newton")

    def test_compute_beta_matches_direct_call(self):
        g, gn, d = v(1, 0), v(0, 1), v(-1, 0)
        assert compute_beta("mprp", g, gn, d, PARAMS) == beta_mprp(g, gn, d, PARAMS)
        assert compute_beta("fr", g, gn, d, PARAMS) == beta_fr(g, gn, d)
