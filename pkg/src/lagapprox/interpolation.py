"""Barycentric interpolation at Laguerre and Laguerre-Radau points.

Barycentric weights are reciprocals of the node-polynomial derivative. For
Gauss nodes the Christoffel identity links them to the quadrature weights,

    1 / |phi'(x_j)|  ~  sqrt(w_j x_j)            (Laguerre points)
    1 / |phi'(x_j)|  ~  sqrt(w_j / gamma)       (Radau interior points)

so they are formed from ``QuadRule.log_weights`` without any products over
nodes. Everything stays in log form until the final combination; the
polynomial weights decay like ``exp(-x_j / 2)`` and would underflow for
large ``n``.

The default evaluator is the first (modified Lagrange) form

    p(x) = l(x) sum_j lam_j f_j / (x - x_j),    l(x) = prod_j (x - x_j) / lead

with ``l`` normalized so that ``lam_j = 1 / l'(x_j)`` exactly. The second
(true) barycentric form divides by ``sum_j lam_j / (x - x_j) = 1 / l(x)``,
which is tiny beyond the first few nodes and is computed there from
cancelling terms of size ``max |lam_j|``; it is available for comparison.

The Laguerre-function interpolant ``q(x) = exp(-x/2) p(x)``, where ``p``
interpolates ``exp(x_j/2) f(x_j)``, uses the factor ``exp((x_j - x)/2)``
folded into the numerator weights in log space.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln

from .basis import Form, check_alpha, log_gamma_norm
from .errors import EvaluationError, ParameterError
from .projection import cached_gauss_rule, default_grid, default_quad_points
from .quadrature import QuadRule, RuleKind, gauss_radau

# a node is "hit" when |x - x_j| is within this many ulps of x_j
_HIT_ULPS = 4
# rows of the (points x nodes) evaluation matrix processed per block
_BLOCK = 2048


class PointKind(str, enum.Enum):
    LAGUERRE = "laguerre"
    RADAU = "radau"

    @classmethod
    def parse(cls, value) -> "PointKind":
        if isinstance(value, cls):
            return value
        key = str(getattr(value, "value", value)).lower()
        aliases = {"laguerre": cls.LAGUERRE, "gauss": cls.LAGUERRE, "radau": cls.RADAU}
        if key not in aliases:
            raise ParameterError(f"unknown point kind {value!r}; use 'laguerre' or 'radau'")
        return aliases[key]


def log_barycentric_weights(rule: QuadRule):
    """Return ``(log|lambda_j|, sign_j)`` for the nodes of ``rule``.

    ``lambda_j = 1 / l'(x_j)`` for ``l = c prod (x - x_j)`` with the constant
    returned by :func:`_log_node_constant`; ``sign_0 = +1``.
    """
    n = rule.npoints
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    logw = rule.log_weights
    x = rule.nodes
    if rule.kind is RuleKind.GAUSS:
        loglam = 0.5 * (logw + np.log(x))
    else:
        m = n - 1
        loglam = np.empty(n)
        # phi(x) = x L_m^{(a+1)}(x): phi'(0) = L_m^{(a+1)}(0), phi'(x_j) = x_j L_m'(x_j)
        log_g = log_gamma_norm(rule.alpha + 1.0, m)
        loglam[0] = gammaln(rule.alpha + 2.0) - log_g
        loglam[1:] = 0.5 * (logw[1:] - log_g)
    return loglam, signs


def _log_node_constant(rule: QuadRule):
    """``(log|c|, sign c)`` with ``l(x) = c prod_j (x - x_j)`` matching the weights above."""
    n = rule.npoints
    if rule.kind is RuleKind.GAUSS:
        # l = -L_n / sqrt(gamma_n), leading coefficient of L_n is (-1)^n / n!
        logc = -gammaln(n + 1.0) - 0.5 * log_gamma_norm(rule.alpha, n)
        return float(logc), -1.0 if n % 2 == 0 else 1.0
    # l = x L_m^{(a+1)}(x), m = n - 1
    m = n - 1
    return float(-gammaln(m + 1.0)), 1.0 if m % 2 == 0 else -1.0


def barycentric_weights(rule: QuadRule) -> np.ndarray:
    """Barycentric weights of the rule's nodes, normalized to ``max |lambda| = 1``.

    Weights far below the largest one underflow to zero; evaluation uses the
    log form and is unaffected.
    """
    loglam, signs = log_barycentric_weights(rule)
    with np.errstate(under="ignore"):
        return signs * np.exp(loglam - loglam.max())


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Immutable barycentric interpolant on Laguerre or Radau points.

    ``bary_weights`` are normalized to unit max modulus; ``log_weights`` and
    ``signs`` hold the same weights without underflow.
    """

    points: np.ndarray
    values: np.ndarray
    bary_weights: np.ndarray
    form: Form
    alpha: float
    point_kind: PointKind
    log_weights: np.ndarray
    signs: np.ndarray
    # log|c| + max log|lambda| and sign c, for l(x) = c prod (x - x_j)
    log_node_const: float = 0.0
    node_sign: float = 1.0

    def __post_init__(self):
        arrays = (self.points, self.values, self.bary_weights, self.log_weights, self.signs)
        if len({a.shape for a in arrays}) != 1 or self.points.ndim != 1:
            raise ParameterError("points, values and weights must be 1-D arrays of equal length")
        if np.any(np.diff(self.points) <= 0):
            raise ParameterError("interpolation points must be strictly increasing")
        for a in arrays:
            a.setflags(write=False)

    @property
    def degree(self) -> int:
        return self.points.size - 1

    def __call__(self, x):
        return eval_interpolant(self, x)


def interpolation_rule(point_kind, alpha: float, n: int) -> QuadRule:
    """The ``n+1``-point rule whose nodes are the requested interpolation points."""
    kind = PointKind.parse(point_kind)
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a non-negative integer, got {n!r}")
    if kind is PointKind.LAGUERRE:
        return cached_gauss_rule(float(alpha), int(n) + 1)
    return gauss_radau(alpha, int(n) + 1)


def interpolate(f: Callable, point_kind="laguerre", form=Form.POLYNOMIAL, alpha: float = 0.0,
                n: int = 10) -> Interpolant:
    """Interpolate ``f`` at the ``n+1`` Laguerre (or Radau) points.

    ``form="function"`` builds the interpolant ``exp(-x/2) p(x)`` from the
    space spanned by Laguerre functions.
    """
    alpha = check_alpha(alpha)
    kind = PointKind.parse(point_kind)
    form = Form.parse(form)
    rule = interpolation_rule(kind, alpha, n)
    x = rule.nodes
    with np.errstate(under="ignore"):
        vals = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape).copy()
    bad = ~np.isfinite(vals)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"function is not finite at node {j} (x={x[j]!r})")
    loglam, signs = log_barycentric_weights(rule)
    top = loglam.max()
    with np.errstate(under="ignore"):
        lam = signs * np.exp(loglam - top)
    logc, sc = _log_node_constant(rule)
    return Interpolant(x.copy(), vals, lam, form, alpha, kind, loglam - top, signs, logc + top, sc)


def _eval_log(itp: Interpolant, x: np.ndarray, formula: str = "first"):
    """``(log|value|, sign, hit)`` of the interpolant at ``x`` (1-D).

    ``hit[i]`` is the index of the node that ``x[i]`` coincides with, or -1.
    """
    if formula not in ("first", "second"):
        raise ParameterError(f"formula must be 'first' or 'second', got {formula!r}")
    nodes, vals = itp.points, itp.values
    logabs = np.empty(x.size)
    sgn = np.empty(x.size)
    with np.errstate(divide="ignore", invalid="ignore", under="ignore", over="ignore"):
        logf = np.log(np.abs(vals))
        sf = np.sign(vals)
        for start in range(0, x.size, _BLOCK):
            xb = x[start:start + _BLOCK, None]
            d = xb - nodes[None, :]
            logd = np.log(np.abs(d))
            sd = np.sign(d)
            logk = itp.log_weights[None, :] - logd
            sk = itp.signs[None, :] * sd
            lognum = logk + logf[None, :]
            if itp.form is Form.FUNCTION:
                lognum = lognum + 0.5 * (nodes[None, :] - xb)
            a = np.max(lognum, axis=1, keepdims=True)
            a = np.where(np.isfinite(a), a, 0.0)
            num = np.sum(sk * sf[None, :] * np.exp(lognum - a), axis=1)
            if formula == "first":
                logl = itp.log_node_const + np.sum(logd, axis=1)
                sl = itp.node_sign * np.prod(sd, axis=1)
                logabs[start:start + _BLOCK] = np.log(np.abs(num)) + a[:, 0] + logl
                sgn[start:start + _BLOCK] = np.sign(num) * sl
            else:
                b = np.max(logk, axis=1, keepdims=True)
                den = np.sum(sk * np.exp(logk - b), axis=1)
                q = num / den
                logabs[start:start + _BLOCK] = np.log(np.abs(q)) + (a - b)[:, 0]
                sgn[start:start + _BLOCK] = np.sign(q)
    # exact node hits: the formulas above are 0 * inf or inf / inf there
    hits = np.full(x.size, -1)
    idx = np.clip(np.searchsorted(nodes, x), 0, nodes.size - 1)
    for cand in (idx, np.maximum(idx - 1, 0)):
        hit = (hits < 0) & (np.abs(x - nodes[cand]) <= _HIT_ULPS * np.spacing(nodes[cand]))
        if hit.any():
            hits[hit] = cand[hit]
            v = vals[cand[hit]]
            with np.errstate(divide="ignore"):
                logabs[hit] = np.log(np.abs(v))
            sgn[hit] = np.sign(v)
    return logabs, sgn, hits


def eval_interpolant(itp: Interpolant, x, formula: str = "first"):
    """Evaluate the interpolant at ``x >= 0``.

    Parameters
    ----------
    itp : Interpolant
    x : float or array_like
        Evaluation points; beyond the last node the interpolant is
        extrapolated and the polynomial form may overflow to ``inf``.
    formula : {"first", "second"}
        Barycentric formula. The second (true) form is exact for constants
        but loses accuracy beyond the first few nodes, where its denominator
        is a sum of cancelling terms.

    Notes
    -----
    At Laguerre-type points the Lebesgue function of polynomial
    interpolation grows like ``exp(x/2)``, so polynomial-form values carry an
    absolute rounding error of order ``eps * exp(x/2) * max|f_j|`` whatever
    formula is used. The function form and the weighted error norms see this
    multiplied by ``exp(-x/2)`` and are unaffected.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterError("interpolants are evaluated on x >= 0 only")
    logabs, sgn, hits = _eval_log(itp, np.atleast_1d(x).ravel(), formula)
    with np.errstate(over="ignore", under="ignore"):
        out = sgn * np.exp(logabs)
    at_node = hits >= 0
    out[at_node] = itp.values[hits[at_node]]
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def interpolation_weighted_error(itp: Interpolant, f: Callable, quad_points: Optional[int] = None) -> float:
    """Weighted L2 error ``||f - itp||``.

    The weight is ``x^a e^-x`` for the polynomial form and ``x^a`` for the
    function form. Each residual is scaled by ``sqrt(w_j)`` in log space, so
    the large values of the polynomial interpolant far beyond the last node
    never overflow.
    """
    m = int(quad_points or default_quad_points(itp.degree))
    rule = cached_gauss_rule(itp.alpha, m)
    y = rule.nodes
    logw = rule.log_weights + (y if itp.form is Form.FUNCTION else 0.0)
    with np.errstate(under="ignore"):
        fy = np.asarray(f(y), dtype=float)
    if not np.all(np.isfinite(fy)):
        raise EvaluationError("function is not finite at a quadrature node")
    logp, sp, _ = _eval_log(itp, y)
    with np.errstate(over="ignore", under="ignore", divide="ignore"):
        a = fy * np.exp(0.5 * logw)
        b = sp * np.exp(logp + 0.5 * logw)
    r = a - b
    if not np.all(np.isfinite(r)):
        raise EvaluationError("weighted residual overflows; interpolant too large at the quadrature nodes")
    return float(np.sqrt(np.sum(r * r)))


def interpolation_max_error(itp: Interpolant, f: Callable, grid=None) -> float:
    """``max |f - itp|`` over ``grid`` (default: the projection error grid)."""
    grid = default_grid(itp.degree, itp.alpha) if grid is None else np.asarray(grid, dtype=float)
    with np.errstate(under="ignore"):
        fx = np.asarray(f(grid), dtype=float)
    return float(np.max(np.abs(fx - eval_interpolant(itp, grid))))
