"""Laplace transform inversion by Laguerre-function expansion (Weeks method).

The inverse is sought as

    f(t) ~ exp(sigma t) sum_k c_k exp(-nu t / 2) L_k(nu t),

whose coefficients are the cosine coefficients of

    phi(theta) = Re[ (nu/2)(1 + i cot(theta/2)) F(sigma + i (nu/2) cot(theta/2)) ].

They are estimated by midpoint cosine sums on ``n + 1`` points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.fft import dct

from .errors import EvaluationError, ParameterError
from .projection import _clenshaw

_ROW_CHUNK = 512


@dataclass(frozen=True)
class LaplacePair:
    """A transform ``F`` with optional exact inverse and analytic metadata.

    ``sigma0`` is the real part of the right-most singularity of ``F``;
    ``rho`` is the parabola parameter of ``f`` (in ``t``), or ``None`` when
    ``f`` is entire.
    """

    name: str
    F: Callable
    f_exact: Optional[Callable] = None
    sigma0: float = 0.0
    rho: Optional[float] = None
    default_sigma: float = 1.0
    default_nu: float = 2.0
    description: str = ""

    def predicted_sqrt_slope(self, nu: float) -> Optional[float]:
        """Root-exponential rate ``2 rho sqrt(nu)`` of the inversion error."""
        return None if self.rho is None else 2.0 * self.rho * float(np.sqrt(nu))


@dataclass(frozen=True)
class WeeksParams:
    sigma: float
    nu: float
    n: int

    def __post_init__(self):
        if not np.isfinite(self.sigma):
            raise ParameterError(f"sigma must be finite, got {self.sigma!r}")
        if not (np.isfinite(self.nu) and self.nu > 0):
            raise ParameterError(f"nu must be positive, got {self.nu!r}")
        if int(self.n) != self.n or self.n < 0:
            raise ParameterError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def validate_for(self, pair: LaplacePair) -> "WeeksParams":
        if not self.sigma > pair.sigma0:
            raise ParameterError(
                f"sigma={self.sigma} must exceed sigma0={pair.sigma0} for pair {pair.name!r}")
        return self


def theta_grid(n: int) -> np.ndarray:
    """Midpoint angles ``(j + 1/2) pi / (n + 1)``, ``j = 0..n``."""
    return (np.arange(n + 1) + 0.5) * np.pi / (n + 1)


def sample_phi(pair: LaplacePair, params: WeeksParams) -> np.ndarray:
    """Values of ``phi`` on the midpoint grid."""
    theta = theta_grid(params.n)
    cot = 1.0 / np.tan(0.5 * theta)
    s = params.sigma + 0.5j * params.nu * cot
    with np.errstate(all="ignore"):
        Fs = np.asarray(pair.F(s), dtype=complex)
        phi = np.real(0.5 * params.nu * (1 + 1j * cot) * Fs)
    bad = ~np.isfinite(phi)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"transform is not finite at theta_{j}={theta[j]!r} (s={s[j]!r})")
    return phi


def cosine_coefficients(phi: np.ndarray, method: str = "direct") -> np.ndarray:
    """``(2 tau_k / N) sum_j phi_j cos(k theta_j)`` for ``k < N = len(phi)``."""
    phi = np.asarray(phi, dtype=float)
    N = phi.size
    tau = np.ones(N)
    tau[0] = 0.5
    if method == "dct":
        # scipy's unnormalized type-II DCT is 2 sum_j phi_j cos(pi k (2j+1) / (2N))
        return tau * dct(phi, type=2) / N
    if method != "direct":
        raise ParameterError(f"method must be 'direct' or 'dct', got {method!r}")
    # reduce k (2j+1) modulo 4N in integers so the cosine argument stays small
    odd = 2 * np.arange(N, dtype=np.int64) + 1
    out = np.empty(N)
    for start in range(0, N, _ROW_CHUNK):
        k = np.arange(start, min(start + _ROW_CHUNK, N), dtype=np.int64)
        r = np.outer(k, odd) % (4 * N)
        out[k] = np.cos(np.pi * r / (2 * N)) @ phi
    return 2.0 * tau * out / N


def weeks_coefficients(pair: LaplacePair, params: WeeksParams, method: str = "direct") -> np.ndarray:
    """The ``n + 1`` Laguerre coefficients of the shifted, scaled inverse.

    Parameters
    ----------
    pair : LaplacePair
    params : WeeksParams
        ``sigma`` must exceed ``pair.sigma0``.
    method : {"direct", "dct"}
        Direct summation (default) or the fast cosine transform.
    """
    params.validate_for(pair)
    return cosine_coefficients(sample_phi(pair, params), method)


def weeks_invert(pair: LaplacePair, params: WeeksParams, t, coeffs: Optional[np.ndarray] = None):
    """Approximate inverse ``f_n(t)`` at ``t >= 0`` (scalar or array)."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ParameterError("t must be finite and >= 0")
    c = weeks_coefficients(pair, params) if coeffs is None else np.asarray(coeffs, dtype=float)
    tt = np.atleast_1d(t).ravel()
    y = params.nu * tt
    # exp(sigma t) enters through the same log factor as the Laguerre-function decay
    out = _clenshaw(0.0, c, y, params.sigma * tt - 0.5 * y)
    if not np.all(np.isfinite(out)):
        j = int(np.flatnonzero(~np.isfinite(out))[0])
        raise EvaluationError(f"f_n(t) overflows at t={tt[j]!r} (sigma={params.sigma})")
    return float(out[0]) if t.ndim == 0 else out.reshape(t.shape)


def weeks_aliasing_check(pair: LaplacePair, params: WeeksParams, oversample: int = 4) -> float:
    """``max_k |c_k(n) - c_k(oversample * n)|`` over ``k <= n``.

    The finer coefficient set is nearly free of aliasing, so the difference
    estimates the aliasing error of the degree-``n`` coefficients.
    """
    if oversample < 2:
        raise ParameterError(f"oversample must be >= 2, got {oversample!r}")
    coarse = weeks_coefficients(pair, params)
    fine_params = WeeksParams(params.sigma, params.nu, int(round(oversample * (params.n + 1))) - 1)
    fine = weeks_coefficients(pair, fine_params)
    return float(np.max(np.abs(coarse - fine[: params.n + 1])))
