"""Spectral differentiation of Laguerre expansions in coefficient space.

Because ``d/dx L_k^{(a)} = -L_{k-1}^{(a+1)}``, differentiating a polynomial
expansion only shifts and negates its coefficients; the result lives in the
basis with parameter ``alpha + 1``. No basis conversion back to ``alpha`` is
attempted.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .basis import Form
from .errors import ParameterError
from .projection import Expansion, _clenshaw, weighted_error


def _step(exp: Expansion) -> Expansion:
    if exp.degree == 0:
        return Expansion(exp.alpha + 1.0, Form.POLYNOMIAL, [0.0], exp.nu)
    # chain rule for the scaled argument nu * x
    coeffs = -exp.nu * exp.coeffs[1:]
    return Expansion(exp.alpha + 1.0, Form.POLYNOMIAL, coeffs, exp.nu)


def differentiate(exp: Expansion, m: int = 1) -> Expansion:
    """``m``-th derivative of a polynomial-form expansion.

    Parameters
    ----------
    exp : Expansion
        Series in ``L_k^{(alpha)}(nu x)``.
    m : int
        Derivative order, ``m >= 1``.

    Returns
    -------
    Expansion
        Series in ``L_k^{(alpha+m)}(nu x)`` of degree ``n - m``; the zero
        series of degree 0 when ``m > n``.

    Notes
    -----
    The derivative is applied one order at a time, so repeated application
    gives bit-identical coefficients to a single call with the summed order.
    """
    if exp.form is not Form.POLYNOMIAL:
        raise ParameterError("differentiate needs a polynomial-form expansion; use differentiate_glf")
    if int(m) != m or m < 1:
        raise ParameterError(f"derivative order must be a positive integer, got {m!r}")
    out = exp
    for _ in range(int(m)):
        out = _step(out)
    return out


def differentiate_glf(exp: Expansion, x) -> np.ndarray:
    """First derivative of a function-form expansion at the points ``x``.

    Uses ``d/dy [e^{-y/2} L_k(y)] = e^{-y/2} (-L_k(y)/2 - L_{k-1}^{(a+1)}(y))``,
    i.e. two Clenshaw passes, one in each parameter.
    """
    if exp.form is not Form.FUNCTION:
        raise ParameterError("differentiate_glf needs a function-form expansion")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterError("expansions are evaluated on x >= 0 only")
    y = np.atleast_1d(exp.nu * x).ravel()
    same = _clenshaw(exp.alpha, exp.coeffs, y, -0.5 * y)
    if exp.degree > 0:
        shifted = _clenshaw(exp.alpha + 1.0, exp.coeffs[1:], y, -0.5 * y)
    else:
        shifted = np.zeros_like(y)
    out = exp.nu * (-0.5 * same - shifted)
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def derivative_weighted_error(exp: Expansion, dfm: Callable, m: int,
                              quad_points: Optional[int] = None) -> float:
    """``||f^(m) - (series)^(m)||`` in the ``x^(a+m) e^-x`` weighted norm.

    ``dfm`` is the exact ``m``-th derivative of the projected function.
    """
    return weighted_error(differentiate(exp, m), dfm, quad_points)
