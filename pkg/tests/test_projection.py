import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import exp1, gamma

from lagapprox.basis import BasisParams, Form, eval_glf, eval_glp
from lagapprox.errors import EvaluationError, ParameterError
from lagapprox.projection import (Expansion, default_grid, default_quad_points, eval_expansion,
                                  max_error_on_grid, project, tail_norm, weighted_error, weighted_norm)

FORMS = [Form.POLYNOMIAL, Form.FUNCTION]


def f1(x):
    return 1.0 / (np.asarray(x) + 1.0)


class TestExpansion:
    @pytest.mark.parametrize("form", FORMS)
    @pytest.mark.parametrize("nu", [1.0, 0.5, 3.0])
    @pytest.mark.parametrize("alpha", [0.0, 1.5, -0.5])
    def test_unit_vector_is_basis_element(self, form, nu, alpha):
        x = np.linspace(0, 30, 41)
        for j in (0, 1, 6):
            c = np.zeros(8)
            c[j] = 1.0
            got = eval_expansion(Expansion(alpha, form, c, nu), x)
            ref = eval_glp(alpha, j, nu * x) if form is Form.POLYNOMIAL else eval_glf(alpha, j, nu * x)
            np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-14)

    def test_e0_examples(self):
        assert eval_expansion(Expansion(0.0, "poly", [1.0]), 7.5) == 1.0
        assert eval_expansion(Expansion(0.0, "glf", [1.0], nu=2.0), 1.5) == pytest.approx(math.exp(-1.5), rel=1e-15)

    def test_square_from_coefficients(self):
        assert eval_expansion(Expansion(0.0, "poly", [2.0, -4.0, 2.0]), 3.0) == pytest.approx(9.0, rel=1e-14)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            Expansion(0.0, "poly", [])
        with pytest.raises(ParameterError):
            Expansion(0.0, "poly", [1.0], nu=0.0)
        with pytest.raises(EvaluationError):
            Expansion(0.0, "poly", [1.0, np.nan])
        with pytest.raises(ParameterError):
            eval_expansion(Expansion(0.0, "poly", [1.0]), -1.0)

    def test_immutable_and_truncate(self):
        e = Expansion(0.0, "poly", [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            e.coeffs[0] = 5.0
        assert e.truncate(1).coeffs.tolist() == [1.0, 2.0]
        assert e.degree == 2

    def test_large_argument_glf_no_overflow(self):
        rng = np.random.default_rng(3)
        e = Expansion(0.0, "glf", rng.uniform(-1, 1, 400))
        vals = eval_expansion(e, np.array([0.0, 500.0, 1500.0, 3000.0]))
        assert np.all(np.isfinite(vals))


class TestProject:
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.5])
    def test_recovers_basis_polynomial(self, alpha):
        e = project(lambda x: eval_glp(alpha, 3, x), 5, BasisParams(alpha))
        np.testing.assert_allclose(e.coeffs, [0, 0, 0, 1, 0, 0], atol=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 10, 80])
    def test_constant(self, n):
        e = project(lambda x: np.ones_like(x), n, BasisParams(0.7))
        expected = np.zeros(n + 1)
        expected[0] = 1.0
        np.testing.assert_allclose(e.coeffs, expected, atol=1e-13)

    def test_leading_coefficient_of_f1(self):
        e = project(f1, 10)
        assert e.coeffs[0] == pytest.approx(math.e * exp1(1.0), abs=1e-13)
        assert e.coeffs[0] == pytest.approx(0.59634736, abs=1e-8)

    def test_pointwise_convergence(self):
        assert abs(eval_expansion(project(f1, 200), 1.0) - 0.5) <= 1e-10

    def test_square(self):
        e = project(lambda x: x ** 2, 4)
        np.testing.assert_allclose(e.coeffs, [2, -4, 2, 0, 0], atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(n=st.integers(0, 50), seed=st.integers(0, 2 ** 31), alpha=st.sampled_from([0.0, 0.5, 1.5, -0.5]),
           form=st.sampled_from(FORMS), nu=st.sampled_from([1.0, 0.5, 2.0]))
    def test_round_trip(self, n, seed, alpha, form, nu):
        c = np.random.default_rng(seed).uniform(-1, 1, n + 1)
        e = Expansion(alpha, form, c, nu)
        back = project(lambda x: eval_expansion(e, x), n, BasisParams(alpha, form), nu=nu)
        np.testing.assert_allclose(back.coeffs, c, rtol=0, atol=1e-11)

    @pytest.mark.parametrize("nu", [0.25, 2.0, 5.0])
    @pytest.mark.parametrize("form", FORMS)
    def test_scaling_is_substitution(self, nu, form):
        f = lambda x: np.exp(-np.asarray(x)) / (9.0 + 4.0 * np.asarray(x))
        a = project(f, 30, BasisParams(0.0, form), nu=nu)
        b = project(lambda x: f(x / nu), 30, BasisParams(0.0, form), nu=1.0)
        np.testing.assert_array_equal(a.coeffs, b.coeffs)

    @pytest.mark.parametrize("n", [10, 20, 30, 40])
    def test_parseval(self, n):
        full = project(f1, 2 * n)
        err = weighted_error(full.truncate(n), f1)
        tail = tail_norm(full, n)
        assert err > 1e-12
        assert tail == pytest.approx(err, rel=0.01)

    def test_errors(self):
        with pytest.raises(ParameterError):
            project(f1, 10, quad_points=5)
        with pytest.raises(ParameterError):
            project(f1, -1)
        with pytest.raises(ParameterError):
            project(f1, 3, nu=-1.0)
        with pytest.raises(EvaluationError, match="node"):
            project(lambda x: np.where(x > 5, np.nan, 1.0), 3)

    def test_default_quad_points(self):
        assert default_quad_points(10) == 104


class TestNorms:
    def test_examples(self):
        assert weighted_norm(lambda x: eval_glp(0.0, 2, x), 0.0) == pytest.approx(1.0, rel=1e-13)
        assert weighted_norm(lambda x: eval_glf(2.5, 0, x), 2.5, "varpi") == pytest.approx(math.sqrt(gamma(3.5)), rel=1e-13)
        assert weighted_norm(lambda x: np.exp(-x / 2), 0.0, "varpi") == pytest.approx(1.0, rel=1e-13)

    def test_bad_weight(self):
        with pytest.raises(ParameterError):
            weighted_norm(f1, 0.0, "uniform")

    def test_max_error_examples(self):
        one = lambda x: np.ones_like(x)
        for n in (0, 1):
            assert max_error_on_grid(project(one, n), one) <= 1e-14
        assert max_error_on_grid(Expansion(0.0, "poly", [0.0]), lambda x: np.zeros_like(x)) == 0.0
        glf1 = lambda x: np.exp(-x / 2) / (1 + x)
        e = project(glf1, 100, BasisParams(0.0, "glf"))
        err = max_error_on_grid(e, glf1)
        predicted = 100 ** 0.25 * math.exp(-2 * math.sqrt(100))
        assert predicted / 100 < err < predicted * 100

    @pytest.mark.parametrize("n", [4, 8, 12, 20])
    def test_constant_error_tracks_basis_size(self, n):
        # coefficient roundoff is amplified by |L_k| at the far end of the grid
        one = lambda x: np.ones_like(x)
        scale = max(abs(eval_glp(0.0, k, default_grid(n)[-1])) for k in range(n + 1))
        assert max_error_on_grid(project(one, n), one) <= 1e-15 * n * scale

    def test_default_grid(self):
        g = default_grid(9)
        assert g[0] == 0.0 and np.all(np.diff(g) > 0)
        assert g.size == 1000 + 10  # Gauss nodes are never on the equispaced lattice here

    def test_weighted_error_matches_norm(self):
        e = project(f1, 8)
        direct = weighted_norm(lambda x: f1(x) - eval_expansion(e, x), 0.0, quad_points=default_quad_points(8))
        assert weighted_error(e, f1) == pytest.approx(direct, rel=1e-10)
