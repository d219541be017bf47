"""Gauss-Laguerre and Gauss-Laguerre-Radau rules for ``int_0^inf x^a e^-x f(x) dx``.

Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix

    diag  a_k = 2k + alpha + 1,   off-diag  b_k = sqrt(k (k + alpha)),

polished by Newton steps on the node polynomial in extended precision. Weights are kept in
log form (``log_weights``); the largest nodes carry weights far below the
double-precision underflow threshold, while products such as
``w_j * exp(x_j)`` stay O(1) and are formed from the logs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .basis import _scaled_recurrence, check_alpha, log_gamma_norm, log_gamma_ratio
from .errors import ConvergenceError, EvaluationError, ParameterError

# 80-bit on x86-64 Linux; silently equal to float64 where unsupported
_EXT = np.longdouble


class RuleKind(str, enum.Enum):
    GAUSS = "gauss"
    RADAU = "radau"


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Immutable quadrature rule with nodes in increasing order."""

    kind: RuleKind
    alpha: float
    nodes: np.ndarray
    log_weights: np.ndarray

    def __post_init__(self):
        for arr in (self.nodes, self.log_weights):
            arr.setflags(write=False)

    @property
    def npoints(self) -> int:
        return self.nodes.size

    @property
    def weights(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_weights)

    def scaled_weights(self, shift: float = 1.0) -> np.ndarray:
        """``w_j * exp(shift * x_j)`` evaluated from the log weights."""
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(self.log_weights + shift * self.nodes)


def _jacobi_matrix(alpha: float, n: int):
    k = np.arange(n, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    return diag, off


def _eigenvalues(diag, off, npoints):
    if npoints == 1:
        return diag.copy()
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True, lapack_driver="stemr")
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise ConvergenceError(f"tridiagonal eigen-iteration failed for {npoints} nodes: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise ConvergenceError(f"eigenvalue {bad} did not converge")
    return np.sort(vals)


def _newton_polish(alpha: float, n: int, x: np.ndarray, steps: int = 2) -> np.ndarray:
    """Newton iterations on ``L_n^{(alpha)}`` in extended precision.

    Returns the polished nodes as an extended-precision array; weights are
    evaluated there before rounding, since the weight formula amplifies the
    double rounding of the smallest nodes.
    """
    xe = np.asarray(x, dtype=_EXT)
    a = _EXT(alpha)
    for _ in range(steps):
        # x L_n' = n L_n - (n + alpha) L_{n-1}; the common log scale cancels in the ratio
        ln, lnm1, _ = _scaled_recurrence(alpha, n, xe, 0.0, dtype=_EXT)
        deriv = n * ln - (n + a) * lnm1
        xe = xe - np.where(deriv != 0, xe * ln / np.where(deriv != 0, deriv, 1), 0)
    return xe


def _log_gauss_weights(alpha: float, n: int, xe: np.ndarray) -> np.ndarray:
    # w_j = gamma_n x_j / ((n + alpha) L_{n-1}(x_j))^2   (from L_n(x_j) = 0)
    _, lnm1, ls = _scaled_recurrence(alpha, n, xe, 0.0, dtype=_EXT)
    log_lnm1 = np.log(np.abs(lnm1)) + ls
    logw = np.log(xe) - 2 * np.log(n + _EXT(alpha)) - 2 * log_lnm1
    return log_gamma_norm(alpha, n) + logw.astype(float)


def _check_npoints(npoints: int) -> int:
    if int(npoints) != npoints or npoints < 1:
        raise ParameterError(f"npoints must be a positive integer, got {npoints!r}")
    return int(npoints)


def gauss_laguerre(alpha: float, npoints: int) -> QuadRule:
    """Gauss-Laguerre rule: nodes are the zeros of ``L_npoints^{(alpha)}``."""
    alpha = check_alpha(alpha)
    n = _check_npoints(npoints)
    diag, off = _jacobi_matrix(alpha, n)
    xe = _newton_polish(alpha, n, _eigenvalues(diag, off, n))
    x = xe.astype(float)
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise ConvergenceError(f"node polishing produced an invalid node set for n={n}")
    return QuadRule(RuleKind.GAUSS, alpha, x, _log_gauss_weights(alpha, n, xe))


def gauss_radau(alpha: float, npoints: int) -> QuadRule:
    """Gauss-Laguerre-Radau rule with the preassigned node ``x_0 = 0``.

    Interior nodes are the zeros of ``L_{npoints-1}^{(alpha+1)}``; the rule is
    exact for polynomials of degree ``2 * (npoints - 1)``.
    """
    alpha = check_alpha(alpha)
    n = _check_npoints(npoints)
    # fixing an eigenvalue at 0 only changes the last diagonal entry, to n - 1
    diag, off = _jacobi_matrix(alpha, n)
    diag[-1] = n - 1.0
    x = _eigenvalues(diag, off, n)
    x[0] = 0.0
    interior = x[1:]
    logw = np.empty(n)
    # w_0 = Gamma(a+1) Gamma(a+2) m! / Gamma(m+a+2),  m = n - 1
    m = n - 1
    logw[0] = gammaln(alpha + 1.0) + gammaln(alpha + 2.0) - log_gamma_ratio(m + 1.0, alpha + 1.0)
    if m > 0:
        xe = _newton_polish(alpha + 1.0, m, interior)
        x[1:] = xe.astype(float)
        if np.any(x[1:] <= 0) or np.any(np.diff(x) <= 0):
            raise ConvergenceError(f"node polishing produced an invalid node set for n={n}")
        # interior weights are the (alpha+1) Gauss weights divided by the node
        logw[1:] = _log_gauss_weights(alpha + 1.0, m, xe) - np.log(xe).astype(float)
    return QuadRule(RuleKind.RADAU, alpha, x, logw)


def make_rule(kind, alpha: float, npoints: int) -> QuadRule:
    kind = RuleKind(str(getattr(kind, "value", kind)).lower())
    return gauss_laguerre(alpha, npoints) if kind is RuleKind.GAUSS else gauss_radau(alpha, npoints)


def integrate(rule: QuadRule, f: Callable) -> float:
    """Approximate ``int_0^inf x^alpha e^-x f(x) dx`` by ``sum_j w_j f(x_j)``.

    ``f`` is called once with the node array.

    Raises
    ------
    EvaluationError
        If ``f`` is not finite at some node.
    """
    vals = np.asarray(f(rule.nodes), dtype=float)
    vals = np.broadcast_to(vals, rule.nodes.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"integrand is not finite at node {j} (x={rule.nodes[j]!r})")
    # combine in log form: w_j underflows at large nodes where f may be large
    with np.errstate(divide="ignore", under="ignore"):
        terms = np.sign(vals) * np.exp(rule.log_weights + np.log(np.abs(vals)))
    return float(np.sum(terms))
