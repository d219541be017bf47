import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagapprox.errors import EvaluationError, ParameterError
from lagapprox.interpolation import (Interpolant, PointKind, barycentric_weights, eval_interpolant, interpolate,
                                     interpolation_max_error, interpolation_rule, interpolation_weighted_error)
from lagapprox.projection import Expansion, eval_expansion
from lagapprox.registry import get_function
from lagapprox.sweeps import interpolation_curve, sqrt_spaced
from lagapprox.verify import fit_rate, predicted_rate

KINDS = ["laguerre", "radau"]
ALPHAS = [0.0, 0.5, 1.5, -0.5]


def product_weights(x):
    lam = np.array([1.0 / np.prod([x[j] - x[i] for i in range(x.size) if i != j]) for j in range(x.size)])
    return lam / np.max(np.abs(lam)) * np.sign(lam[0])


class TestWeights:
    def test_single_point(self):
        rule = interpolation_rule("laguerre", 0.0, 0)
        assert barycentric_weights(rule).tolist() == [1.0]

    def test_two_laguerre_points(self):
        rule = interpolation_rule("laguerre", 0.0, 1)
        lam = barycentric_weights(rule)
        # l = (x^2 - 4x + 2)/2, so lambda_j is proportional to 1/(x_j - 2)
        ref = 1.0 / (rule.nodes - 2.0)
        np.testing.assert_allclose(lam / lam[0], ref / ref[0], rtol=1e-14)
        assert lam[0] > 0 > lam[1]

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("n", range(0, 13))
    def test_against_product_formula(self, kind, alpha, n):
        rule = interpolation_rule(kind, alpha, n)
        lam = barycentric_weights(rule)
        np.testing.assert_allclose(lam, product_weights(rule.nodes), rtol=1e-10, atol=1e-300)
        np.testing.assert_array_equal(np.sign(lam), (-1.0) ** np.arange(n + 1))

    @pytest.mark.parametrize("kind", KINDS)
    def test_large_n_log_weights_finite(self, kind):
        itp = interpolate(lambda x: np.exp(-x) / (1 + x), kind, "poly", 0.0, 1500)
        assert np.all(np.isfinite(itp.log_weights))
        assert np.max(np.abs(itp.bary_weights)) == 1.0

    def test_point_kind_parse(self):
        assert PointKind.parse("gauss") is PointKind.LAGUERRE
        with pytest.raises(ParameterError):
            PointKind.parse("chebyshev")


class TestEvaluate:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("form", ["poly", "glf"])
    @pytest.mark.parametrize("n", [0, 1, 5, 40, 300])
    def test_node_reproduction(self, kind, form, n):
        itp = interpolate(lambda x: np.sin(x) + 2.0, kind, form, 0.5, n)
        for fmt in ("first", "second"):
            out = eval_interpolant(itp, itp.points, fmt)
            np.testing.assert_array_equal(out, itp.values)
        assert eval_interpolant(itp, itp.points[min(3, n)]) == itp.values[min(3, n)]

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_constant_data(self, kind, n):
        itp = interpolate(lambda x: np.full_like(x, 3.25), kind, "poly", 0.0, n)
        x = np.linspace(0.0, itp.points[-1], 257)
        for fmt in ("first", "second"):
            np.testing.assert_allclose(eval_interpolant(itp, x, fmt), 3.25, rtol=1e-10)

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [30, 60, 200])
    def test_constant_data_within_conditioning(self, kind, n):
        # the Lebesgue function at these points grows like exp(x/2)
        itp = interpolate(lambda x: np.full_like(x, 3.25), kind, "poly", 0.0, n)
        x = np.linspace(0.0, itp.points[-1], 513)
        err = np.abs(eval_interpolant(itp, x) - 3.25)
        assert np.all(err <= 3.25 * 1e-12 * np.exp(x / 2))
        glf = interpolate(lambda x: np.exp(-x / 2), kind, "glf", 0.0, n)
        assert np.max(np.abs(eval_interpolant(glf, x) - np.exp(-x / 2))) <= 1e-12

    def test_linear_midpoint(self):
        itp = interpolate(lambda x: 3.0 * x - 1.0, "laguerre", "poly", 0.0, 1)
        x0, x1 = itp.points
        mid = 0.5 * (x0 + x1)
        assert eval_interpolant(itp, mid) == pytest.approx(0.5 * (itp.values[0] + itp.values[1]), rel=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(kind=st.sampled_from(KINDS), alpha=st.sampled_from(ALPHAS), n=st.integers(0, 60),
           seed=st.integers(0, 2 ** 31))
    def test_polynomial_reproduction(self, kind, alpha, n, seed):
        rng = np.random.default_rng(seed)
        ex = Expansion(alpha, "poly", rng.uniform(-1, 1, n + 1))
        itp = interpolate(lambda x: eval_expansion(ex, x), kind, "poly", alpha, n)
        x = rng.uniform(0, itp.points[-1], 100)
        fx = eval_expansion(ex, x)
        assert np.max(np.abs(eval_interpolant(itp, x) - fx)) <= 1e-11 * np.max(np.abs(fx))

    @pytest.mark.parametrize("kind", KINDS)
    def test_function_form_reproduces_span(self, kind):
        ex = Expansion(0.0, "glf", np.random.default_rng(1).uniform(-1, 1, 21))
        itp = interpolate(lambda x: eval_expansion(ex, x), kind, "glf", 0.0, 20)
        x = np.linspace(0, 200, 301)
        np.testing.assert_allclose(eval_interpolant(itp, x), eval_expansion(ex, x), atol=1e-12)

    def test_second_form_matches_first_near_origin(self):
        itp = interpolate(lambda x: 1.0 / (1.0 + x), "laguerre", "poly", 0.0, 30)
        x = np.linspace(0, 2.0, 50)
        np.testing.assert_allclose(eval_interpolant(itp, x, "second"), eval_interpolant(itp, x), rtol=1e-12)

    def test_errors(self):
        with pytest.raises(EvaluationError, match="node"), np.errstate(divide="ignore"):
            interpolate(lambda x: 1.0 / x, "radau", "poly", 0.0, 4)
        itp = interpolate(np.cos, "laguerre", "poly", 0.0, 4)
        with pytest.raises(ParameterError):
            eval_interpolant(itp, -0.5)
        with pytest.raises(ParameterError):
            eval_interpolant(itp, 1.0, "third")
        with pytest.raises(ParameterError):
            interpolation_rule("laguerre", 0.0, -2)

    def test_interpolant_validates_shapes(self):
        a = np.arange(3.0)
        with pytest.raises(ParameterError):
            Interpolant(a, np.arange(2.0), a, "poly", 0.0, PointKind.LAGUERRE, a, a)
        with pytest.raises(ParameterError):
            Interpolant(a[::-1].copy(), a, a, "poly", 0.0, PointKind.LAGUERRE, a, a)


class TestErrorNorms:
    def test_weighted_error_zero_for_polynomial(self):
        itp = interpolate(lambda x: x ** 3 - x, "laguerre", "poly", 0.0, 5)
        assert interpolation_weighted_error(itp, lambda x: x ** 3 - x) < 1e-12

    def test_max_error_of_function_form(self):
        f = lambda x: np.exp(-x / 2) / (1 + x)
        itp = interpolate(f, "laguerre", "glf", 0.0, 100)
        err = interpolation_max_error(itp, f)
        assert 1e-10 < err < 1e-6

    def test_rational_example_rate(self):
        f = get_function("interp2")
        ns, errs = interpolation_curve(f, 0.0, [64, 100])
        s = math.sqrt(1.5)
        # the n = 100 error sits on the predicted line through n = 64
        pred = errs[0] * (100 / 64) ** 0.25 * math.exp(-2 * s * (10 - 8))
        assert pred / 5 < errs[1] < pred * 5

    def test_function_form_rate(self):
        fspec = get_function("glf1")
        ns, errs = interpolation_curve(fspec, 0.0, sqrt_spaced(16, 225, 20), "laguerre", "glf")
        s, p = predicted_rate(fspec, 0.0, "interp_glf")
        fit = fit_rate(ns, errs, envelope=True, log_power=p)
        assert abs(fit.sqrt_slope - s) <= 0.1 * s
