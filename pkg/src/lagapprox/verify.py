"""Executable checks of the convergence theory.

* parabola geometry ``Re sqrt(-z) = rho`` and the supremal ``rho`` of a
  singularity set,
* the weighted Cauchy transform ``Phi_n(z) = (1/2 pi i) int x^a e^-x L_n(x) / (z - x) dx``
  and its large-``n`` asymptotic,
* Laguerre coefficients recovered as contour integrals of ``Phi_k f`` along a
  parabola, independently of any projection code path,
* the arc-length constants ``V`` / ``V_hat`` that set the size of the error
  bounds,
* least-squares fits of root-exponential (and faster) decay, and the rates
  the theory predicts for each kind of approximation.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .basis import check_alpha, gamma_norm, glf_table, log_gamma_norm
from .errors import DomainError, FitError, NoPrediction, ParameterError
from .quadrature import gauss_laguerre


class ContourTruncationWarning(UserWarning):
    """The contour integrand has not decayed at the end of the window."""


class GrowthClass(str, enum.Enum):
    ALGEBRAIC = "algebraic"
    ALGEBRAIC_TIMES_EXP_HALF = "algebraic_times_exp_half"
    ENTIRE_EXPONENTIAL = "entire_exponential"
    ENTIRE_GAUSSIAN = "entire_gaussian"

    @property
    def entire(self) -> bool:
        return self in (GrowthClass.ENTIRE_EXPONENTIAL, GrowthClass.ENTIRE_GAUSSIAN)


@dataclass(frozen=True)
class Parabola:
    """The curve ``Re sqrt(-z) = rho`` with vertex ``-rho^2`` and focus 0.

    Parametrized by ``z(t) = t^2 - rho^2 - 2 t rho i = (t - i rho)^2``; as
    ``t`` increases the curve is traversed counterclockwise around the
    region it encloses (which contains the positive real axis).
    """

    rho: float

    def __post_init__(self):
        if not (np.isfinite(self.rho) and self.rho > 0):
            raise ParameterError(f"rho must be positive, got {self.rho!r}")

    def z(self, t):
        t = np.asarray(t, dtype=float)
        return (t - 1j * self.rho) ** 2

    def dz(self, t):
        t = np.asarray(t, dtype=float)
        return 2.0 * (t - 1j * self.rho)

    def ds(self, t):
        """Arc-length density ``|z'(t)|``."""
        t = np.asarray(t, dtype=float)
        return 2.0 * np.hypot(t, self.rho)

    @property
    def vertex(self) -> complex:
        return complex(-self.rho ** 2)

    def focal_defect(self, t):
        """``|z| - Re z - 2 rho^2``; zero on the parabola."""
        z = self.z(t)
        return np.abs(z) - z.real - 2.0 * self.rho ** 2

    def contains(self, z) -> np.ndarray:
        """True strictly inside (on the side of the positive real axis)."""
        return parabola_parameter(z) < self.rho


def parabola_parameter(z):
    """``Re sqrt(-z)``, the ``rho`` of the parabola through ``z``."""
    z = np.asarray(z, dtype=complex)
    return np.sqrt(0.5 * (np.abs(z) - z.real))


def rho_from_singularities(singularities: Sequence[complex]) -> float:
    """Largest ``rho`` for which no singularity lies inside the parabola.

    Raises
    ------
    DomainError
        If a singularity lies on ``[0, inf)``, where no parabola excludes it.
    """
    z = np.asarray(list(singularities), dtype=complex)
    if z.size == 0:
        raise ParameterError("singularity list must be non-empty")
    on_axis = (z.imag == 0) & (z.real >= 0)
    if on_axis.any():
        raise DomainError(f"singularity {z[on_axis][0]!r} lies on the positive real axis")
    return float(np.min(parabola_parameter(z)))


@dataclass(frozen=True)
class FunctionSpec:
    """A test function with the analytic data the convergence theory needs.

    ``f`` is vectorized over reals; ``fc`` evaluates at complex points and
    defaults to ``f``. ``derivative(m)`` returns the ``m``-th derivative as
    a callable, when known.
    """

    name: str
    f: Callable
    singularities: Tuple[complex, ...] = ()
    beta: float = 0.0
    growth_class: GrowthClass = GrowthClass.ALGEBRAIC
    alpha_defaults: Tuple[float, ...] = (0.0,)
    fc: Optional[Callable] = None
    derivative: Optional[Callable[[int], Callable]] = None
    rho: Optional[float] = None
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "growth_class", GrowthClass(self.growth_class))
        object.__setattr__(self, "singularities", tuple(complex(s) for s in self.singularities))
        if self.singularities:
            rho_from_singularities(self.singularities)

    def __call__(self, x):
        return self.f(x)

    def complex_eval(self, z):
        return (self.fc or self.f)(z)

    @property
    def rho_sup(self) -> float:
        """Supremal parabola parameter; infinite without singularities."""
        return rho_from_singularities(self.singularities) if self.singularities else float("inf")


@dataclass(frozen=True)
class RateFit:
    """``log e ~ intercept + log_power * log n - sqrt_slope * n^q``."""

    sqrt_slope: float
    log_power: float
    intercept: float
    residual: float
    n_range: Tuple[int, int]
    q: float = 0.5
    npoints: int = 0

    def model(self, n):
        n = np.asarray(n, dtype=float)
        return np.exp(self.intercept + self.log_power * np.log(n) - self.sqrt_slope * n ** self.q)


# ----------------------------------------------------------------------------
# Cauchy transform of the Laguerre polynomials

def default_phi_points(n: int) -> int:
    return 8 * (int(n) + 32)


def _distance_to_halfline(z: np.ndarray) -> np.ndarray:
    return np.where(z.real >= 0, np.abs(z.imag), np.abs(z))


@lru_cache(maxsize=16)
def _phi_table(alpha: float, kmax: int, npoints: int):
    """Gauss nodes and ``w_j L_k(x_j)`` for ``k = 0..kmax`` (rows)."""
    rule = gauss_laguerre(alpha, npoints)
    x = rule.nodes
    # w_j L_k(x_j) = (w_j e^{x_j/2}) * exp(-x_j/2) L_k(x_j)
    table = glf_table(alpha, kmax, x) * rule.scaled_weights(0.5)
    table.setflags(write=False)
    return x, table


def _phi_matrix(alpha: float, ks: np.ndarray, z: np.ndarray, npoints: int) -> np.ndarray:
    x, table = _phi_table(alpha, int(ks.max()), int(npoints))
    kernel = 1.0 / (z[None, :] - x[:, None])
    return (table[ks] @ kernel) / (2j * np.pi)


def phi_oracle(alpha: float, n: int, z, quad_points: Optional[int] = None):
    """``Phi_n(z)`` by Gauss-Laguerre quadrature of the Cauchy integral.

    Parameters
    ----------
    alpha : float
    n : int
    z : complex or array of complex
        Points off ``[0, inf)``.
    quad_points : int, optional
        Rule size, default ``8 (n + 32)``.

    Raises
    ------
    DomainError
        If some ``z`` is within ``1e-8`` of the positive real axis.
    """
    alpha = check_alpha(alpha)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    close = _distance_to_halfline(z_arr) < 1e-8
    if close.any():
        raise DomainError(f"z={z_arr[close][0]!r} is on or too close to the positive real axis")
    m = default_phi_points(n) if quad_points is None else int(quad_points)
    out = _phi_matrix(alpha, np.array([int(n)]), z_arr, m)[0]
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def phi_asymptotic(alpha: float, n: int, z):
    """Leading large-``n`` behaviour of ``Phi_n(z)`` off the positive axis."""
    alpha = check_alpha(alpha)
    z = np.asarray(z, dtype=complex)
    p = alpha / 2 + 0.25
    mz = -z
    # principal branches: sqrt(-z) has positive real part off [0, inf)
    log_val = (log_gamma_norm(alpha, n) - 2.0 * np.sqrt((n + 1) * mz) - 0.5 * np.log(np.pi) - np.log(2.0)
               - 0.5 * z + p * np.log(mz) - p * np.log(n + 1.0))
    out = 1j * np.exp(log_val)
    return complex(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------------
# contour integrals along the parabola

DEFAULT_T_LIMIT = 1e15
DEFAULT_T_POINTS = 6001
_TAIL_TOL = 1e-10


def _half_contour(t_limit: float, t_points: int):
    """Nodes ``t = sinh(u)`` on ``[0, t_limit]`` with trapezoid weights in ``t``.

    Integrands along the parabola decay only algebraically in ``t`` but are
    analytic in a strip; the sinh substitution turns the algebraic tail into
    an exponential one in ``u`` where the trapezoid rule converges
    geometrically.
    """
    if not (t_limit > 0 and np.isfinite(t_limit)):
        raise ParameterError(f"t_limit must be positive and finite, got {t_limit!r}")
    if int(t_points) < 3:
        raise ParameterError(f"t_points must be at least 3, got {t_points!r}")
    u = np.linspace(0.0, np.arcsinh(t_limit), int(t_points))
    h = u[1] - u[0]
    wt = h * np.cosh(u)
    wt[0] *= 0.5
    wt[-1] *= 0.5
    return np.sinh(u), wt


def _check_contour(fspec: FunctionSpec, rho: float, what: str):
    if fspec.growth_class.entire:
        raise DomainError(f"{what} needs algebraic growth on the parabola; {fspec.name!r} is "
                          f"{fspec.growth_class.value}")
    Parabola(rho)
    if rho >= fspec.rho_sup:
        raise DomainError(f"rho={rho} must be below the supremal value {fspec.rho_sup} for {fspec.name!r}")


def min_contour_degree(beta: float) -> int:
    """Smallest degree for which the contour representation converges."""
    return max(int(np.floor(beta - 0.5)) + 1, 0)


def contour_coefficients(fspec: FunctionSpec, alpha: float, ks, rho: float,
                         t_limit: float = DEFAULT_T_LIMIT, t_points: int = DEFAULT_T_POINTS,
                         phi: str = "auto", quad_points: Optional[int] = None) -> np.ndarray:
    """Laguerre coefficients ``a_k`` from the contour integral of ``Phi_k f``.

    Parameters
    ----------
    fspec : FunctionSpec
        Real on the real axis, so the two halves of the parabola are complex
        conjugates and only ``t >= 0`` is integrated.
    alpha : float
    ks : sequence of int
    rho : float
        Parabola parameter, ``0 < rho < fspec.rho_sup``.
    t_limit, t_points : float, int
        Window ``[0, t_limit]`` in the curve parameter and its number of
        trapezoid nodes in the sinh-mapped variable.
    phi : {"auto", "oracle", "asymptotic"}
        How ``Phi_k`` is evaluated; "auto" uses quadrature for ``k <= 30``
        and the large-``k`` asymptotic beyond.
    quad_points : int, optional
        Size of the Gauss rule for the quadrature evaluation of ``Phi_k``.

    Warns
    -----
    ContourTruncationWarning
        If the integrand at ``t_limit`` suggests a tail above 1e-10.
    """
    alpha = check_alpha(alpha)
    _check_contour(fspec, rho, "contour_coefficient")
    ks = np.atleast_1d(np.asarray(ks, dtype=int))
    kmin = min_contour_degree(fspec.beta)
    if ks.min() < kmin:
        raise DomainError(f"degree {int(ks.min())} is below the admissible minimum {kmin} for beta={fspec.beta}")
    if phi not in ("auto", "oracle", "asymptotic"):
        raise ParameterError(f"phi must be 'auto', 'oracle' or 'asymptotic', got {phi!r}")
    par = Parabola(rho)
    t, wt = _half_contour(t_limit, t_points)
    z = par.z(t)
    with np.errstate(all="ignore"):
        fz = np.asarray(fspec.complex_eval(z), dtype=complex)
    fz = np.where(np.isfinite(fz), fz, 0.0)
    weight = wt * fz * par.dz(t)
    out = np.empty(ks.size)
    use_oracle = ks <= 30 if phi == "auto" else np.full(ks.size, phi == "oracle")
    rows = np.empty((ks.size, t.size), dtype=complex)
    if use_oracle.any():
        sel = ks[use_oracle]
        m = default_phi_points(sel.max()) if quad_points is None else int(quad_points)
        rows[use_oracle] = _phi_matrix(alpha, sel, z, m)
    for i in np.flatnonzero(~use_oracle):
        with np.errstate(all="ignore"):
            rows[i] = np.nan_to_num(phi_asymptotic(alpha, int(ks[i]), z))
    vals = rows * weight[None, :]
    # g(-t) = conj(g(t)) for real f
    out = 2.0 * np.real(vals.sum(axis=1)) / gamma_norm(alpha, ks)
    # the imaginary parts cancel between the two halves, so only Re g sets the tail
    tail = np.abs(vals[:, -1].real) / wt[-1] * t[-1] / gamma_norm(alpha, ks)
    if np.any(tail > _TAIL_TOL):
        warnings.warn(f"contour window t <= {t_limit:g} leaves a tail estimate {tail.max():.2e}",
                      ContourTruncationWarning, stacklevel=2)
    return out


def contour_coefficient(fspec: FunctionSpec, alpha: float, k: int, rho: float,
                        t_limit: float = DEFAULT_T_LIMIT, t_points: int = DEFAULT_T_POINTS,
                        **kwargs) -> float:
    """Single-degree version of :func:`contour_coefficients`."""
    return float(contour_coefficients(fspec, alpha, [k], rho, t_limit, t_points, **kwargs)[0])


def v_alpha_constant(fspec: FunctionSpec, alpha: float, rho: float, variant: str = "V",
                     t_limit: float = DEFAULT_T_LIMIT, t_points: int = DEFAULT_T_POINTS) -> float:
    """Arc-length integral ``int |(-z)^(a/2+1/4) e^(-z/2) f(z)| ds`` along the parabola.

    ``variant="V_hat"`` drops the ``e^(-z/2)`` factor. On the parabola
    ``|z| = t^2 + rho^2``, so the integrand is real and even in ``t``.
    """
    alpha = check_alpha(alpha)
    _check_contour(fspec, rho, "v_alpha_constant")
    key = variant.replace("-", "_").lower()
    if key not in ("v", "v_hat"):
        raise ParameterError(f"variant must be 'V' or 'V_hat', got {variant!r}")
    par = Parabola(rho)
    t, wt = _half_contour(t_limit, t_points)
    z = par.z(t)
    with np.errstate(all="ignore"):
        fz = np.abs(np.asarray(fspec.complex_eval(z), dtype=complex))
        log_mod = (alpha / 2 + 0.25) * np.log(np.abs(z))
        if key == "v":
            log_mod = log_mod - 0.5 * z.real
        dens = np.where(fz > 0, np.exp(log_mod) * fz, 0.0) * par.ds(t)
    dens = np.nan_to_num(dens, nan=np.inf)
    val = 2.0 * float(np.sum(wt * dens))
    if dens[-1] * t[-1] > _TAIL_TOL * max(val, 1e-300):
        warnings.warn(f"arc-length integrand has not decayed by t={t_limit:g}",
                      ContourTruncationWarning, stacklevel=2)
    return val


# ----------------------------------------------------------------------------
# rate fitting

def _prepare(ns, errors, floor, envelope):
    ns = np.asarray(ns, dtype=float)
    es = np.abs(np.asarray(errors, dtype=float))
    if ns.shape != es.shape or ns.ndim != 1:
        raise FitError("ns and errors must be 1-D arrays of equal length")
    order = np.argsort(ns)
    ns, es = ns[order], es[order]
    if envelope:
        # running maximum from the right: an upper envelope of oscillating errors
        es = np.maximum.accumulate(es[::-1])[::-1]
    keep = np.isfinite(es) & (es > floor) & (ns > 0)
    if keep.sum() < 5:
        raise FitError(f"only {int(keep.sum())} points above the floor {floor:g}; need at least 5")
    return ns[keep], es[keep]


def fit_rate(ns, errors, floor: float = 1e-13, envelope: bool = False,
             log_power: Optional[float] = None, q: float = 0.5) -> RateFit:
    """Least-squares fit of ``log e = c + p log n - s n^q``.

    Parameters
    ----------
    ns, errors : array_like
    floor : float
        Points with ``error <= floor`` are dropped.
    envelope : bool
        Fit the running maximum from the right instead of the raw values.
        Useful when errors oscillate in sign or magnitude.
    log_power : float, optional
        Hold ``p`` fixed instead of fitting it.
    q : float
        Exponent of ``n`` in the decay term; 1/2 for root-exponential decay.
    """
    ns, es = _prepare(ns, errors, floor, envelope)
    y = np.log(es)
    cols = [np.ones_like(ns), -ns ** q]
    if log_power is None:
        cols.append(np.log(ns))
    else:
        y = y - log_power * np.log(ns)
    A = np.stack(cols, axis=1)
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ sol - y) ** 2)))
    p = float(sol[2]) if log_power is None else float(log_power)
    return RateFit(float(sol[1]), p, float(sol[0]), resid, (int(ns[0]), int(ns[-1])), float(q), int(ns.size))


ENTIRE_EXPONENTS = (0.5, 2.0 / 3.0, 1.0)


def fit_entire(ns, errors, floor: float = 1e-13, envelope: bool = True,
               qs: Sequence[float] = ENTIRE_EXPONENTS) -> RateFit:
    """Fit each exponent in ``qs`` and keep the one with the smallest residual."""
    fits = [fit_rate(ns, errors, floor, envelope, None, q) for q in qs]
    return min(fits, key=lambda r: r.residual)


# ----------------------------------------------------------------------------
# predicted rates

MODES = ("coeff", "projW", "projMax", "interp", "interp_radau", "interp_glf",
         "quad", "weeks", "diff", "scaled")


def predicted_rate(fspec: FunctionSpec, alpha: float, mode: str, *, nu: float = 1.0,
                   m: int = 1, sigma: Optional[float] = None) -> Tuple[float, float]:
    """``(s, p)`` such that the error behaves like ``n^p exp(-s sqrt(n))``.

    Modes
    -----
    coeff         coefficient magnitudes ``|a_n|``
    projW         weighted-norm projection error
    projMax       max-norm projection error in the function basis
    interp        weighted interpolation error at Laguerre points
    interp_radau  same at Laguerre-Radau points
    interp_glf    max-norm error of function-basis interpolation
    quad          Gauss or Radau quadrature error
    weeks         Laplace inversion error at fixed ``t`` (uses ``nu``)
    diff          ``m``-th derivative error in the shifted weighted norm
    scaled        max-norm error with the scaled argument ``nu x``

    Raises
    ------
    NoPrediction
        For entire functions or functions without recorded singularities.
    """
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if fspec.growth_class.entire or not fspec.singularities:
        raise NoPrediction(f"no finite-rho rate prediction for {fspec.name!r} ({fspec.growth_class.value})")
    alpha = check_alpha(alpha)
    rho = fspec.rho_sup
    s = 2.0 * rho
    half = abs(alpha) / 2 + 0.25
    if mode == "coeff":
        return s, -alpha / 2 - 0.25
    if mode == "projW":
        return s, 0.0
    if mode in ("projMax", "interp_glf"):
        return s, half
    if mode == "interp":
        return s, 0.25
    if mode == "interp_radau":
        return s, 0.75
    if mode == "quad":
        return 2 * s, 0.0
    if mode == "weeks":
        return s * float(np.sqrt(nu)), 0.25
    if mode == "diff":
        if int(m) != m or m < 1:
            raise ParameterError(f"derivative order must be a positive integer, got {m!r}")
        return s, m / 2
    return s * float(np.sqrt(nu)), half
