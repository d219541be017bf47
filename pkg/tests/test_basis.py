import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma, poch

from lagapprox.basis import (BasisParams, Form, check_alpha, eval_glf, eval_glp, eval_glp_derivative,
                             gamma_norm, glf_bound, glf_table, glp_log, log_gamma_norm, log_gamma_ratio)
from lagapprox.errors import EvaluationError, ParameterError


def hyp_series(alpha, k, x):
    # binom(k+a, k) * 1F1(-k; a+1; x), terminating
    total = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for j in range(k + 1):
        total += term
        term *= mpmath.mpf(-k + j) * x / ((alpha + 1 + j) * (j + 1))
    return mpmath.binomial(k + alpha, k) * total


class TestParams:
    @pytest.mark.parametrize("alpha", [-1.0, -2.5, float("nan"), float("inf")])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ParameterError):
            check_alpha(alpha)

    def test_form_aliases(self):
        assert Form.parse("glf") is Form.FUNCTION
        assert Form.parse("poly") is Form.POLYNOMIAL
        with pytest.raises(ParameterError):
            Form.parse("chebyshev")

    def test_basis_params_rejects_alpha(self):
        with pytest.raises(ParameterError):
            BasisParams(-1.0)


class TestEvalGLP:
    @pytest.mark.parametrize("alpha,k,x,expected", [
        (0.0, 0, 3.7, 1.0),
        (0.5, 1, 2.0, -0.5),
        (0.0, 2, 2.0, -1.0),
    ])
    def test_examples(self, alpha, k, x, expected):
        assert eval_glp(alpha, k, x) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.5, -0.5])
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0])
    def test_matches_hypergeometric_series(self, alpha, x):
        with mpmath.workdps(40):
            for k in range(11):
                ref = float(hyp_series(mpmath.mpf(alpha), k, mpmath.mpf(x)))
                assert eval_glp(alpha, k, x) == pytest.approx(ref, rel=1e-12, abs=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.5, -0.5, 7.25])
    def test_endpoint_value(self, alpha):
        for k in range(30):
            assert eval_glp(alpha, k, 0.0) == pytest.approx(poch(alpha + 1, k) / math.factorial(k), rel=1e-13)

    def test_vectorized_and_negative_x(self):
        x = np.array([-2.0, 0.0, 1.0, 3.0])
        vals = eval_glp(0.0, 2, x)
        np.testing.assert_allclose(vals, (x ** 2 - 4 * x + 2) / 2, rtol=1e-15)

    def test_overflow_is_reported(self):
        with pytest.raises(EvaluationError):
            eval_glp(0.0, 2000, 1e6)

    def test_log_form_survives_overflow(self):
        logmag, sign = glp_log(0.0, 2000, 1e6)
        assert np.isfinite(logmag) and logmag > 700
        assert sign == 1.0  # leading term (-x)^n / n! with n even
        with mpmath.workdps(30):
            ref = mpmath.log(abs(mpmath.laguerre(200, 0, 5000)))
        assert glp_log(0.0, 200, 5000.0)[0] == pytest.approx(float(ref), rel=1e-12)

    def test_negative_degree(self):
        with pytest.raises(ParameterError):
            eval_glp(0.0, -1, 1.0)


class TestEvalGLF:
    def test_examples(self):
        assert eval_glf(0.0, 0, 2.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
        assert eval_glf(0.0, 5, 0.0) == 1.0

    def test_large_degree_matches_extended_precision(self):
        val = eval_glf(1.5, 40, 100.0)
        with mpmath.workdps(50):
            ref = mpmath.exp(-50) * mpmath.laguerre(40, 1.5, 100)
        assert np.isfinite(val)
        assert val == pytest.approx(float(ref), rel=1e-11)
        assert abs(val) <= glf_bound(1.5, 40)

    def test_no_underflow_at_large_x(self):
        # exp(-x/2) alone underflows, but the product is representable
        x = 3000.0
        val = eval_glf(0.0, 400, x)
        with mpmath.workdps(60):
            ref = mpmath.exp(-x / 2) * mpmath.laguerre(400, 0, x)
        assert val == pytest.approx(float(ref), rel=1e-9)

    def test_rejects_negative_x(self):
        with pytest.raises(ParameterError):
            eval_glf(0.0, 3, -1.0)

    @pytest.mark.parametrize("alpha", [0.0, 1.5, -0.5])
    def test_table_matches_pointwise(self, alpha):
        x = np.linspace(0, 80, 37)
        table = glf_table(alpha, 25, x)
        for k in (0, 1, 7, 25):
            np.testing.assert_allclose(table[k], eval_glf(alpha, k, x), rtol=1e-13, atol=1e-300)


class TestNormsAndBound:
    @pytest.mark.parametrize("alpha,k,expected", [(0.0, 2, 1.0), (1.0, 3, 4.0), (2.5, 0, gamma(3.5))])
    def test_gamma_norm(self, alpha, k, expected):
        assert gamma_norm(alpha, k) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("alpha", [-0.99, -0.5, 0.3, 1.5, 3.0, 20.7])
    @pytest.mark.parametrize("k", [0, 4, 19, 20, 1499, 10 ** 5, 10 ** 9])
    def test_log_norm_against_mpmath(self, alpha, k):
        with mpmath.workdps(40):
            a = mpmath.mpf(alpha)
            ref = float(mpmath.loggamma(k + a + 1) - mpmath.loggamma(k + 1))
        assert log_gamma_norm(alpha, k) == pytest.approx(ref, rel=1e-14, abs=1e-15)
        assert log_gamma_ratio(k + 1.0, alpha) == log_gamma_norm(alpha, k)

    def test_gamma_norm_large_degree_finite(self):
        assert np.isfinite(log_gamma_norm(0.5, 5000))

    @pytest.mark.parametrize("alpha,n,expected", [(0.0, 0, 1.0), (0.0, 77, 1.0), (1.5, 2, 35 / 8), (-0.5, 0, 1.0)])
    def test_bound_examples(self, alpha, n, expected):
        assert glf_bound(alpha, n) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.5, -0.5])
    @pytest.mark.parametrize("n", [1, 5, 30, 120, 200])
    def test_uniform_bound(self, alpha, n):
        x = np.linspace(0.0, 4.0 * n, 400)
        assert np.all(np.abs(eval_glf(alpha, n, x)) <= glf_bound(alpha, n) * (1 + 1e-10))

    @settings(max_examples=40, deadline=None)
    @given(alpha=st.floats(-0.99, 6.0), n=st.integers(0, 150), x=st.floats(0.0, 700.0))
    def test_bound_random(self, alpha, n, x):
        assert abs(eval_glf(alpha, n, x)) <= glf_bound(alpha, n) * (1 + 1e-10)


class TestDerivative:
    def test_examples(self):
        assert eval_glp_derivative(0.0, 1, 1, 12.3) == -1.0
        assert eval_glp_derivative(0.0, 2, 1, 2.0) == 0.0
        assert eval_glp_derivative(0.0, 3, 4, 1.0) == 0.0

    @settings(max_examples=50, deadline=None)
    @given(alpha=st.floats(-0.9, 4.0), k=st.integers(1, 60), x=st.floats(0.0, 50.0))
    def test_shift_identity(self, alpha, k, x):
        assert eval_glp_derivative(alpha, k, 1, x) == -eval_glp(alpha + 1, k - 1, x)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_against_mpmath_diff(self, m):
        with mpmath.workdps(40):
            ref = mpmath.diff(lambda t: mpmath.laguerre(9, 0.5, t), 2.5, m)
        assert eval_glp_derivative(0.5, 9, m, 2.5) == pytest.approx(float(ref), rel=1e-12)
