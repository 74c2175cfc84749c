import io

import numpy as np
import pytest

from ncgkit.core import check_gradient
from ncgkit.errors import ConfigurationError
from ncgkit.problems import (
    ProblemSpec,
    export_regression,
    get_problem,
    make_regression,
    registry,
    suite,
    suite_names,
)
from ncgkit.solver import CONVERGED, minimize

EXPECTED_NAMES = [
    "ext_rosenbrock", "ext_white_holst", "ext_beale", "ext_himmelblau",
    "ext_tridiagonal1", "gen_quartic", "diagonal1", "diagonal4", "raydan1",
    "raydan2", "quad_qf1", "quad_qf2", "ext_penalty", "perturbed_quadratic",
    "hager", "ext_trigonometric", "wood", "powell_singular",
]


class TestSuiteRegistry:
    def test_names(self):
        assert suite_names() == EXPECTED_NAMES

    def test_instance_count(self):
        # 15 problems at dims {2,10,100}, ext_penalty at {2,10},
        # wood and powell_singular at dim 4
        specs = suite()
        assert len(specs) == 15 * 3 + 2 + 1 + 1
        assert all(s.family == "suite" for s in specs)

    def test_fixed_dim_problems(self):
        dims = {s.name: s.dim for s in suite() if s.name in ("wood", "powell_singular")}
        assert dims == {"wood": 4, "powell_singular": 4}

    def test_get_problem_validates_dims(self):
        with pytest.raises(ConfigurationError):
            get_problem("ext_rosenbrock", 7)  # pairwise problems need even dim
        with pytest.raises(ConfigurationError):
            get_problem("wood", 10)
        with pytest.raises(ConfigurationError):
            get_problem("no_such_problem", 10)

    def test_get_problem_custom_dim(self):
        spec = get_problem("ext_rosenbrock", 36)
        assert spec.dim == 36 and len(spec.x0) == 36

    def test_registry_includes_sphere_and_regression(self):
        names = {s.name for s in registry()}
        assert "sphere" in names
        assert "regression_s42" in names

    def test_keys_unique(self):
        keys = [s.key for s in registry()]
        assert len(keys) == len(set(keys))


class TestSuiteValues:
    def test_rosenbrock_start_value(self):
        spec = get_problem("ext_rosenbrock", 2)
        # 100(1 - 1.44)^2 + (1 + 1.2)^2 = 19.36 + 4.84
        assert spec.objective().value(spec.x0) == pytest.approx(24.2, rel=1e-14)

    def test_gradients_match_finite_differences_at_start(self):
        for spec in suite():
            err = check_gradient(spec.objective(), spec.x0, h=1e-6)
            assert err <= 1e-6, f"{spec.key}: {err:.3e}"

    def test_gradients_match_finite_differences_at_perturbations(self):
        rng = np.random.default_rng(40)
        for spec in suite():
            obj = spec.objective()
            for _ in range(5):
                x = spec.x0 + 0.1 * rng.standard_normal(spec.dim)
                err = check_gradient(obj, x, h=1e-6)
                assert err <= 1e-6, f"{spec.key}: {err:.3e}"

    def test_qf1_reaches_closed_form_minimum(self):
        # minimizer: x_i = 0 except x_n = 1/n, so f* = -1/(2n)
        spec = get_problem("quad_qf1", 10)
        trace = minimize(spec.objective(), spec.x0)
        assert trace.status == CONVERGED
        assert trace.f_final == pytest.approx(-0.05, abs=1e-6)


class TestRegression:
    def test_defaults(self):
        prob = make_regression()
        assert prob.A.shape == (10, 50)
        assert prob.p == 1.5 and prob.lam == 0.01 and prob.seed == 42
        assert np.count_nonzero(prob.u) == 5  # ceil(0.1 * 50)

    def test_seed_determinism(self):
        a = make_regression(seed=7)
        b = make_regression(seed=7)
        np.testing.assert_array_equal(a.A, b.A)
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.b, b.b)
        c = make_regression(seed=8)
        assert not np.array_equal(a.A, c.A)

    def test_b_equals_Au_exactly(self):
        prob = make_regression(seed=3)
        np.testing.assert_array_equal(prob.b, prob.A @ prob.u)

    def test_residual_vanishes_at_generator(self):
        prob = make_regression(seed=5)
        obj = prob.objective()
        expected_penalty = 0.5 * prob.lam * float(np.sum(np.abs(prob.u) ** prob.p))
        assert obj.value(prob.u) == pytest.approx(expected_penalty, rel=1e-12)

    def test_entries_uniform_01(self):
        prob = make_regression(m=50, n=80, seed=11)
        assert prob.A.min() >= 0.0 and prob.A.max() <= 1.0

    @pytest.mark.parametrize("kwargs", [
        {"m": 0}, {"n": 0}, {"p": 1.0}, {"p": 2.5}, {"lam": -0.1},
        {"sparsity": 0.0}, {"sparsity": 1.5},
    ])
    def test_parameter_validation(self, kwargs):
        with pytest.raises(ConfigurationError):
            make_regression(**kwargs)

    def test_gradient_away_from_kinks(self):
        prob = make_regression(seed=42)
        obj = prob.objective()
        rng = np.random.default_rng(41)
        for _ in range(6):
            x = rng.choice([-1.0, 1.0], size=prob.n) * (0.1 + rng.random(prob.n))
            assert check_gradient(obj, x, h=1e-6) <= 1e-6

    def test_penalty_gradient_zero_at_origin_coordinates(self):
        prob = make_regression(seed=42)
        g = prob.objective().gradient(np.zeros(prob.n))
        np.testing.assert_allclose(g, prob.A.T @ (-prob.b), rtol=1e-14)

    def test_ridge_case_all_methods_converge(self):
        from ncgkit.solver import SolverConfig

        spec = make_regression(p=2.0, seed=42).spec()
        for method in ("PRP", "PRP+", "PRP-Y", "MPRP"):
            trace = minimize(spec.objective(), spec.x0, SolverConfig(method=method))
            assert trace.status == CONVERGED, method

    def test_ridge_case_gradient(self):
        prob = make_regression(p=2.0, seed=9)
        obj = prob.objective()
        rng = np.random.default_rng(42)
        x = rng.standard_normal(prob.n)
        expected = prob.A.T @ (prob.A @ x - prob.b) + prob.lam * x
        np.testing.assert_allclose(obj.gradient(x), expected, rtol=1e-12)

    def test_non_lipschitz_penalty_gradient_ratio(self):
        # isolate the penalty gradient by subtracting the linear residual part
        prob = make_regression(seed=42)
        obj = prob.objective()

        def penalty_ratio(t):
            x = np.zeros(prob.n)
            x[0] = t
            g_pen = obj.gradient(x) - prob.A.T @ (prob.A @ x - prob.b)
            return abs(g_pen[0]) / t

        assert penalty_ratio(1e-14) > 1e5 * penalty_ratio(1e-2)

    def test_spec_wrapper(self):
        prob = make_regression(seed=4)
        spec = prob.spec()
        assert isinstance(spec, ProblemSpec)
        assert spec.family == "regression"
        assert spec.dim == prob.n
        np.testing.assert_array_equal(spec.x0, np.zeros(prob.n))


class TestRegressionExport:
    def test_round_trip(self):
        prob = make_regression(m=3, n=6, seed=13)
        buf = io.StringIO()
        export_regression(prob, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0].startswith("# regression instance:")
        a_rows = [l for l in lines if l.startswith("A,")]
        assert len(a_rows) == 3
        parsed_a = np.array([[float(v) for v in row.split(",")[1:]] for row in a_rows])
        np.testing.assert_array_equal(parsed_a, prob.A)
        b_row = next(l for l in lines if l.startswith("b,"))
        np.testing.assert_array_equal(np.array([float(v) for v in b_row.split(",")[1:]]), prob.b)
        u_row = next(l for l in lines if l.startswith("u,"))
        np.testing.assert_array_equal(np.array([float(v) for v in u_row.split(",")[1:]]), prob.u)
