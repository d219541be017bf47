"""Error-versus-degree curves shared by the command line and the test-suite.

Each function returns ``(ns, errors)`` as float arrays. Projection-type
curves compute one high-degree expansion and truncate it, since the
coefficients of a truncated projection do not depend on the truncation
degree.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .basis import BasisParams, Form
from .differentiation import derivative_weighted_error
from .errors import ParameterError
from .interpolation import PointKind, interpolate, interpolation_max_error, interpolation_weighted_error
from .projection import (cached_gauss_rule, default_quad_points, max_error_on_grid, project,
                         weighted_error)
from .quadrature import gauss_radau, integrate
from .weeks import LaplacePair, WeeksParams, weeks_invert

Curve = Tuple[np.ndarray, np.ndarray]


def _ns(ns) -> np.ndarray:
    ns = np.asarray(sorted(set(int(n) for n in ns)), dtype=int)
    if ns.size == 0 or ns[0] < 0:
        raise ParameterError("degrees must be a non-empty set of non-negative integers")
    return ns


def coefficient_curve(f: Callable, alpha: float, nmax: int, form="poly", nu: float = 1.0) -> Curve:
    """``|a_n|`` (or ``|b_n|``) for ``n = 0..nmax``."""
    exp = project(f, nmax, BasisParams(alpha, form), nu=nu)
    return np.arange(nmax + 1, dtype=float), np.abs(exp.coeffs)


def projection_curve(f: Callable, alpha: float, ns, norm: str = "max", form="glf",
                     nu: float = 1.0) -> Curve:
    """Projection error for each degree in ``ns``.

    ``norm="max"`` takes the maximum over the default sampling grid;
    ``norm="weighted"`` is the weighted L2 norm of the basis.
    """
    ns = _ns(ns)
    if norm not in ("max", "weighted"):
        raise ParameterError(f"norm must be 'max' or 'weighted', got {norm!r}")
    full = project(f, int(ns[-1]), BasisParams(alpha, form), nu=nu)
    errs = []
    for n in ns:
        exp = full.truncate(int(n))
        errs.append(max_error_on_grid(exp, f) if norm == "max" else weighted_error(exp, f))
    return ns.astype(float), np.array(errs)


def interpolation_curve(f: Callable, alpha: float, ns, points="laguerre", form="poly",
                        norm: Optional[str] = None) -> Curve:
    """Interpolation error for each degree.

    The default norm is the weighted L2 norm for polynomial interpolants and
    the max norm for function-form interpolants.
    """
    ns = _ns(ns)
    form = Form.parse(form)
    norm = norm or ("weighted" if form is Form.POLYNOMIAL else "max")
    errs = []
    for n in ns:
        itp = interpolate(f, PointKind.parse(points), form, alpha, int(n))
        errs.append(interpolation_weighted_error(itp, f) if norm == "weighted" else interpolation_max_error(itp, f))
    return ns.astype(float), np.array(errs)


def reference_integral(f: Callable, alpha: float, order: int) -> float:
    return integrate(cached_gauss_rule(float(alpha), int(order)), f)


def quadrature_curve(f: Callable, alpha: float, ns, kind: str = "gauss",
                     reference_order: Optional[int] = None) -> Curve:
    """``|I(f) - Q_n(f)|`` where ``Q_n`` uses ``n + 1`` nodes.

    The reference value comes from a Gauss rule of order ``4 max(ns)``
    unless ``reference_order`` is given.
    """
    ns = _ns(ns)
    order = reference_order or max(4 * int(ns[-1]), 16)
    ref = reference_integral(f, alpha, order)
    kind = str(kind).lower()
    if kind not in ("gauss", "radau"):
        raise ParameterError(f"kind must be 'gauss' or 'radau', got {kind!r}")
    errs = []
    for n in ns:
        rule = cached_gauss_rule(float(alpha), int(n) + 1) if kind == "gauss" else gauss_radau(alpha, int(n) + 1)
        errs.append(abs(integrate(rule, f) - ref))
    return ns.astype(float), np.array(errs)


def derivative_curve(f: Callable, df: Callable, alpha: float, m: int, ns) -> Curve:
    """Weighted error of the ``m``-th derivative of the degree-``n`` projection."""
    ns = _ns(ns)
    full = project(f, int(ns[-1]), BasisParams(alpha, Form.POLYNOMIAL))
    errs = [derivative_weighted_error(full.truncate(int(n)), df, m) for n in ns]
    return ns.astype(float), np.array(errs)


def weeks_curve(pair: LaplacePair, sigma: float, nu: float, ns, t: float) -> Curve:
    """Signed error ``f(t) - f_n(t)`` of the Laplace inversion."""
    if pair.f_exact is None:
        raise ParameterError(f"pair {pair.name!r} has no exact inverse")
    ns = _ns(ns)
    exact = float(pair.f_exact(t))
    errs = [exact - weeks_invert(pair, WeeksParams(sigma, nu, int(n)), float(t)) for n in ns]
    return ns.astype(float), np.array(errs)


def sqrt_spaced(lo: int, hi: int, count: int) -> np.ndarray:
    """About ``count`` distinct degrees evenly spaced in ``sqrt(n)``."""
    return np.unique(np.round(np.linspace(np.sqrt(lo), np.sqrt(hi), count) ** 2).astype(int))
