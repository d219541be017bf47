"""Generalized Laguerre polynomials and functions.

All evaluators run the three-term recurrence in the degree index

    (k+1) L_{k+1} = (2k+alpha+1-x) L_k - (k+alpha) L_{k-1}

in difference form, carrying ``d_k = L_k - L_{k-1}`` with

    (k+1) d_{k+1} = (k+alpha) d_k - x L_k,    L_{k+1} = L_k + d_{k+1}.

Near ``x = 0`` the two solutions of the plain recurrence almost coincide and
rounding errors grow like ``k**2``; the difference form avoids that. Values are
held as a mantissa / log-scale pair, so neither the polynomial growth of
``L_k(x)`` nor the factor ``exp(-x/2)`` of the Laguerre functions can
overflow or underflow before the final combination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import gammaln

from .errors import EvaluationError, ParameterError

# rescale the running pair once the latest value exceeds this magnitude
_RESCALE_AT = 1e100


class Form(str, enum.Enum):
    POLYNOMIAL = "polynomial"
    FUNCTION = "function"

    @classmethod
    def parse(cls, value: Union[str, "Form"]) -> "Form":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        aliases = {"poly": cls.POLYNOMIAL, "glp": cls.POLYNOMIAL, "p": cls.POLYNOMIAL,
                   "glf": cls.FUNCTION, "func": cls.FUNCTION, "f": cls.FUNCTION}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ParameterError(f"unknown basis form {value!r}") from None


@dataclass(frozen=True)
class BasisParams:
    """Laguerre family parameter ``alpha > -1`` and the basis form."""

    alpha: float = 0.0
    form: Form = Form.POLYNOMIAL

    def __post_init__(self):
        check_alpha(self.alpha)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "form", Form.parse(self.form))


AlphaLike = Union[float, BasisParams]


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= -1.0:
        raise ParameterError(f"alpha must be a finite number > -1, got {alpha!r}")
    return alpha


def _alpha_of(p: AlphaLike) -> float:
    if isinstance(p, BasisParams):
        return p.alpha
    return check_alpha(p)


def _check_degree(k: int, name: str = "k") -> int:
    if int(k) != k or k < 0:
        raise ParameterError(f"{name} must be a non-negative integer, got {k!r}")
    return int(k)


def _scaled_recurrence(alpha: float, k: int, x: np.ndarray, log_scale0, dtype=float):
    """Return mantissas ``(m_k, m_{k-1})`` and a log scale with
    ``L_j(x) * exp(log_scale0) = m_j * exp(log_scale)``.

    ``m_{-1}`` is reported as 0 for ``k == 0``.
    """
    x = np.asarray(x, dtype=dtype)
    alpha = dtype(alpha) if dtype is not float else alpha
    ls = np.broadcast_to(np.asarray(log_scale0, dtype=dtype), x.shape).copy()
    prev = np.zeros_like(x)
    p = np.ones_like(x)
    if k == 0:
        return p, prev, ls
    d = alpha - x
    prev, p = p, p + d
    for j in range(1, k):
        d = ((j + alpha) * d - x * p) / (j + 1)
        prev, p = p, p + d
        big = np.maximum(np.abs(p), np.abs(d)) > _RESCALE_AT
        if big.any():
            s = np.where(big, np.maximum(np.abs(p), np.abs(d)), 1)
            p, prev, d = p / s, prev / s, d / s
            ls = ls + np.log(s)
    return p, prev, ls


def _finish(values, x, what):
    out = np.asarray(values)
    if not np.all(np.isfinite(out)):
        bad = np.asarray(x)[~np.isfinite(out)] if out.ndim else x
        raise EvaluationError(
            f"{what} is not representable in double precision at x={np.ravel(bad)[:3]}; "
            "use glp_log for log-magnitude evaluation")
    return float(out) if out.ndim == 0 else out


def eval_glp(params: AlphaLike, k: int, x):
    """Generalized Laguerre polynomial ``L_k^{(alpha)}(x)``.

    ``x`` may be a scalar or array; negative ``x`` is allowed.

    Raises
    ------
    EvaluationError
        If the value overflows double precision.
    """
    alpha = _alpha_of(params)
    k = _check_degree(k)
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        m, _, ls = _scaled_recurrence(alpha, k, x, 0.0)
        val = m * np.exp(ls)
    return _finish(val, x, f"L_{k}^({alpha})")


def glp_log(params: AlphaLike, k: int, x):
    """Return ``(log|L_k^{(alpha)}(x)|, sign)`` without overflow."""
    alpha = _alpha_of(params)
    k = _check_degree(k)
    x = np.asarray(x, dtype=float)
    m, _, ls = _scaled_recurrence(alpha, k, x, 0.0)
    with np.errstate(divide="ignore"):
        logmag = np.log(np.abs(m)) + ls
    sign = np.sign(m)
    if x.ndim == 0:
        return float(logmag), float(sign)
    return logmag, sign


def eval_glf(params: AlphaLike, k: int, x):
    """Generalized Laguerre function ``exp(-x/2) L_k^{(alpha)}(x)`` for ``x >= 0``."""
    alpha = _alpha_of(params)
    k = _check_degree(k)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterError("Laguerre functions are evaluated on x >= 0 only")
    m, _, ls = _scaled_recurrence(alpha, k, x, -0.5 * x)
    with np.errstate(over="ignore"):
        val = m * np.exp(ls)
    return _finish(val, x, f"GLF_{k}^({alpha})")


def glf_table(alpha: float, n: int, x) -> np.ndarray:
    """Values of ``exp(-x/2) L_k^{(alpha)}(x)`` for ``k = 0..n``.

    Returns an array of shape ``(n + 1, len(x))``.
    """
    alpha = check_alpha(alpha)
    n = _check_degree(n, "n")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mant = np.empty((n + 1, x.size))
    logs = np.empty((n + 1, x.size))
    ls = -0.5 * x
    p0 = np.ones_like(x)
    mant[0], logs[0] = p0, ls
    if n >= 1:
        d = alpha - x
        p = p0 + d
        mant[1], logs[1] = p, ls
        for j in range(1, n):
            d = ((j + alpha) * d - x * p) / (j + 1)
            p = p + d
            big = np.maximum(np.abs(p), np.abs(d)) > _RESCALE_AT
            if big.any():
                s = np.where(big, np.maximum(np.abs(p), np.abs(d)), 1.0)
                p, d = p / s, d / s
                ls = ls + np.log(s)
            mant[j + 1], logs[j + 1] = p, ls
    with np.errstate(over="ignore", under="ignore"):
        return mant * np.exp(logs)


# B_{2m} / (2m (2m-1)) for the Stirling series of log Gamma
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360, 1 / 156)
_STIRLING_FROM = 20.0


def log_gamma_ratio(z, a):
    """``log(Gamma(z + a) / Gamma(z))`` for ``z > 0``, ``z + a > 0``.

    The plain ``gammaln`` difference loses about ``log(z)`` digits relative
    to the result once ``z`` is large. There the Stirling series is
    differenced term by term instead.
    """
    z = np.asarray(z, dtype=float)
    a = float(a)
    direct = gammaln(z + a) - gammaln(z)
    big = (z >= _STIRLING_FROM) & (z + a >= _STIRLING_FROM)
    if not np.any(big):
        return direct
    zb = np.where(big, z, _STIRLING_FROM)
    u = np.log1p(a / zb)
    out = (zb - 0.5) * u + a * np.log(zb + a) - a
    for m, c in enumerate(_STIRLING, start=1):
        p = 2 * m - 1
        out = out + c * zb ** -p * np.expm1(-p * u)
    return np.where(big, out, direct)


def log_gamma_norm(alpha: float, k) -> np.ndarray:
    """``log(Gamma(k+alpha+1) / k!)``."""
    alpha = check_alpha(alpha)
    return log_gamma_ratio(np.asarray(k, dtype=float) + 1.0, alpha)


def gamma_norm(alpha: float, k):
    """Squared weighted norm ``gamma_k = Gamma(k+alpha+1)/k!`` of ``L_k^{(alpha)}``."""
    val = np.exp(log_gamma_norm(alpha, k))
    return float(val) if np.ndim(val) == 0 else val


def glf_bound(alpha: float, n: int) -> float:
    """Uniform bound on ``exp(-x/2)|L_n^{(alpha)}(x)|`` over ``x >= 0``."""
    alpha = check_alpha(alpha)
    _check_degree(n, "n")
    kappa = float(np.exp(log_gamma_norm(alpha, n) - gammaln(alpha + 1.0)))
    return kappa if alpha >= 0 else 2.0 - kappa


def eval_glp_derivative(params: AlphaLike, k: int, m: int, x):
    """``m``-th derivative of ``L_k^{(alpha)}`` via ``(-1)^m L_{k-m}^{(alpha+m)}``."""
    alpha = _alpha_of(params)
    k = _check_degree(k)
    m = _check_degree(m, "m")
    if m == 0:
        return eval_glp(alpha, k, x)
    if m > k:
        z = np.zeros_like(np.asarray(x, dtype=float))
        return float(z) if z.ndim == 0 else z
    val = eval_glp(alpha + m, k - m, x)
    return -val if m % 2 else val
