"""Truncated Laguerre expansions: coefficients, evaluation and norms.

An :class:`Expansion` represents

    sum_k c_k L_k^{(alpha)}(nu x)               (polynomial form)
    sum_k c_k exp(-nu x / 2) L_k^{(alpha)}(nu x) (function form)

Coefficients are discrete inner products against a Gauss-Laguerre rule in
the scaled variable ``y = nu x``. The exponential factors that separate the
two weights (``x^a e^-x`` versus ``x^a``) are folded into the quadrature
weights in log form, so only Laguerre-function values are ever tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .basis import BasisParams, Form, check_alpha, gamma_norm, glf_table
from .errors import EvaluationError, ParameterError
from .quadrature import QuadRule, gauss_laguerre

_RESCALE_AT = 1e100


@dataclass(frozen=True, eq=False)
class Expansion:
    """Immutable finite Laguerre series."""

    alpha: float
    form: Form
    coeffs: np.ndarray
    nu: float = 1.0

    def __post_init__(self):
        check_alpha(self.alpha)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "form", Form.parse(self.form))
        c = np.array(self.coeffs, dtype=float, ndmin=1)
        if c.ndim != 1 or c.size == 0:
            raise ParameterError("coeffs must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise EvaluationError(f"non-finite coefficient at index {int(np.flatnonzero(~np.isfinite(c))[0])}")
        if not (np.isfinite(self.nu) and self.nu > 0):
            raise ParameterError(f"nu must be positive, got {self.nu!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "nu", float(self.nu))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def truncate(self, n: int) -> "Expansion":
        """The same series keeping only degrees ``0..n``."""
        return replace(self, coeffs=self.coeffs[: n + 1])

    def __call__(self, x):
        return eval_expansion(self, x)


@lru_cache(maxsize=64)
def cached_gauss_rule(alpha: float, npoints: int) -> QuadRule:
    """Gauss-Laguerre rules are immutable, so repeated projections share them."""
    return gauss_laguerre(alpha, npoints)


def default_quad_points(n: int) -> int:
    return 4 * n + 64


def _sample(f: Callable, x: np.ndarray, what: str = "integrand") -> np.ndarray:
    with np.errstate(under="ignore"):
        vals = np.asarray(f(x), dtype=float)
    vals = np.broadcast_to(vals, x.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"{what} is not finite at node {j} (x={x[j]!r})")
    return vals


def project(f: Callable, n: int, params: BasisParams = BasisParams(), nu: float = 1.0,
            quad_points: Optional[int] = None) -> Expansion:
    """Degree-``n`` Laguerre projection of ``f``.

    Parameters
    ----------
    f : callable
        Vectorized function of ``x >= 0``.
    n : int
        Truncation degree.
    params : BasisParams
        ``alpha`` and basis form (polynomial ``a_k`` or function ``b_k``).
    nu : float
        Argument scaling; the basis is evaluated at ``nu * x``.
    quad_points : int, optional
        Order of the Gauss-Laguerre rule, default ``4 n + 64``.
    """
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    if not (np.isfinite(nu) and nu > 0):
        raise ParameterError(f"nu must be positive, got {nu!r}")
    m = default_quad_points(n) if quad_points is None else int(quad_points)
    if m < n + 1:
        raise ParameterError(f"quad_points={m} must be at least n+1={n + 1}")
    alpha = params.alpha
    rule = cached_gauss_rule(alpha, m)
    y = rule.nodes
    g = _sample(lambda t: f(t / nu), y)
    # polynomial form: w_j L_k(y_j) = (w_j e^{y_j/2}) GLF_k(y_j)
    # function form:   w_j e^{y_j} GLF_k(y_j) supplies the x^alpha weight
    shift = 0.5 if params.form is Form.POLYNOMIAL else 1.0
    sw = rule.scaled_weights(shift)
    table = glf_table(alpha, n, y)
    coeffs = table @ (sw * g) / gamma_norm(alpha, np.arange(n + 1))
    return Expansion(alpha, params.form, coeffs, nu)


def _clenshaw(alpha: float, coeffs: np.ndarray, y: np.ndarray, log_factor) -> np.ndarray:
    """``exp(log_factor) * sum_k c_k L_k(y)`` by a rescaled backward recurrence."""
    n = coeffs.size - 1
    ls = np.zeros_like(y)
    b1 = np.zeros_like(y)
    b2 = np.zeros_like(y)
    with np.errstate(under="ignore"):
        for k in range(n, -1, -1):
            a_k = (2 * k + alpha + 1.0 - y) / (k + 1)
            b_next = (k + 1 + alpha) / (k + 2)
            # c_k enters in the current scaled units; exp(-ls) may underflow harmlessly
            b0 = coeffs[k] * np.exp(-ls) + a_k * b1 - b_next * b2
            big = np.abs(b0) > _RESCALE_AT
            if big.any():
                s = np.where(big, np.abs(b0), 1.0)
                b0 = b0 / s
                b1 = b1 / s
                ls = ls + np.log(s)
            b1, b2 = b0, b1
    # L_1 = A_0 L_0, so the sum collapses to b_0 L_0
    with np.errstate(over="ignore", under="ignore"):
        return b1 * np.exp(ls + log_factor)


def eval_expansion(exp: Expansion, x):
    """Evaluate the series at ``x >= 0`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterError("expansions are evaluated on x >= 0 only")
    y = np.atleast_1d(exp.nu * x)
    factor = -0.5 * y if exp.form is Form.FUNCTION else 0.0
    out = _clenshaw(exp.alpha, exp.coeffs, y, factor)
    if not np.all(np.isfinite(out)):
        raise EvaluationError("expansion value overflows double precision")
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def weighted_norm(g: Callable, alpha: float, weight: str = "omega",
                  quad_points: int = 256) -> float:
    """``sqrt(int_0^inf g(x)^2 w(x) dx)`` with ``w = x^a e^-x`` (omega) or ``x^a`` (varpi)."""
    alpha = check_alpha(alpha)
    if weight not in ("omega", "varpi"):
        raise ParameterError(f"weight must be 'omega' or 'varpi', got {weight!r}")
    rule = cached_gauss_rule(alpha, int(quad_points))
    vals = _sample(g, rule.nodes, "function")
    shift = 0.0 if weight == "omega" else 1.0
    with np.errstate(divide="ignore", under="ignore"):
        terms = np.exp(rule.log_weights + shift * rule.nodes + 2.0 * np.log(np.abs(vals)))
    return float(np.sqrt(np.sum(terms)))


def default_grid(n: int, alpha: float = 0.0, nu: float = 1.0) -> np.ndarray:
    """1000 equispaced points on [0, 50] together with the order-``n+1`` Gauss nodes (in ``x``)."""
    nodes = cached_gauss_rule(float(alpha), int(n) + 1).nodes / nu
    return np.union1d(np.linspace(0.0, 50.0, 1000), nodes)


def max_error_on_grid(exp: Expansion, f: Callable, grid: Optional[Sequence[float]] = None) -> float:
    """``max |f(x) - exp(x)|`` over ``grid`` (default :func:`default_grid`)."""
    grid = default_grid(exp.degree, exp.alpha, exp.nu) if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ParameterError("grid must be non-empty")
    if np.any(grid < 0):
        raise ParameterError("grid points must be >= 0")
    with np.errstate(under="ignore"):
        fx = np.asarray(f(grid), dtype=float)
    return float(np.max(np.abs(fx - eval_expansion(exp, grid))))


def weighted_error(exp: Expansion, f: Callable, quad_points: Optional[int] = None) -> float:
    """Weighted L2 error of the series against ``f``.

    The weight is ``x^a e^-x`` for polynomial expansions and ``x^a`` for
    function expansions, taken in the scaled variable ``y = nu x``. Both
    cases are summed as ``sum_j (w_j e^{y_j}) r_j^2`` with a residual in
    Laguerre-function units, which never overflows at the large nodes.
    """
    m = quad_points or default_quad_points(exp.degree)
    rule = cached_gauss_rule(exp.alpha, int(m))
    y = rule.nodes
    fy = _sample(lambda t: f(t / exp.nu), y, "function")
    if exp.form is Form.POLYNOMIAL:
        with np.errstate(under="ignore"):
            fy = fy * np.exp(-0.5 * y)
    series = _clenshaw(exp.alpha, exp.coeffs, y, -0.5 * y)
    resid = fy - series
    return float(np.sqrt(np.sum(rule.scaled_weights(1.0) * resid ** 2)))


def tail_norm(exp: Expansion, n: int) -> float:
    """``sqrt(sum_{k>n} c_k^2 gamma_k)``: the Parseval form of the truncation error."""
    c = exp.coeffs[n + 1:]
    k = np.arange(n + 1, exp.degree + 1)
    return float(np.sqrt(np.sum(c ** 2 * gamma_norm(exp.alpha, k)))) if c.size else 0.0
