"""Exponential integral ``E1`` for complex arguments.

The power series is used for ``|z| <= 4`` and a continued fraction (modified
Lentz iteration) outside that disc. Inside the disc the series still cancels
badly on the right, so the continued fraction also takes ``Re z >= 2``. Laplace transforms like ``e^s E1(s)``
need the scaled value ``e^z E1(z)``, which the continued fraction delivers
directly without overflow at large ``|z|``.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DomainError

SWITCH_RADIUS = 4.0
SWITCH_REAL = 2.0
_EULER = 0.57721566490153286061
_TINY = 1e-300


def _series(z: complex) -> complex:
    # E1(z) = -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
    total = 0j
    term = 1 + 0j
    for k in range(1, 200):
        term *= -z / k
        inc = term / k
        total += inc
        if abs(inc) <= 1e-17 * abs(total):
            break
    return -_EULER - np.log(z) - total


def _cfrac_scaled(z: complex, maxiter: int = 5000) -> complex:
    # e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
    b = z + 1
    c = 1 / _TINY
    d = 1 / b
    h = d
    for i in range(1, maxiter):
        an = -float(i * i)
        b = b + 2
        d = an * d + b
        if d == 0:
            d = _TINY
        c = b + an / c
        if c == 0:
            c = _TINY
        d = 1 / d
        delta = c * d
        h *= delta
        if abs(delta - 1) < 1e-16:
            return h
    raise ConvergenceError(f"E1 continued fraction did not converge at z={z!r}")


def _check(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise DomainError("E1 has a logarithmic singularity at 0")
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError(f"E1 argument must be finite, got {z!r}")
    return z


def _use_series(z: complex) -> bool:
    return abs(z) <= SWITCH_RADIUS and z.real < SWITCH_REAL


def _exp1_scalar(z: complex) -> complex:
    z = _check(z)
    if _use_series(z):
        return _series(z)
    return np.exp(-z) * _cfrac_scaled(z)


def _exp1_scaled_scalar(z: complex) -> complex:
    z = _check(z)
    if _use_series(z):
        return np.exp(z) * _series(z)
    return _cfrac_scaled(z)


def exp1(z):
    """Principal branch of ``E1(z)``, cut along the negative real axis."""
    out = np.vectorize(_exp1_scalar, otypes=[complex])(z)
    return complex(out) if np.ndim(out) == 0 else out


def exp1_scaled(z):
    """``exp(z) * E1(z)``."""
    out = np.vectorize(_exp1_scaled_scalar, otypes=[complex])(z)
    return complex(out) if np.ndim(out) == 0 else out


def exp1_series(z) -> complex:
    """Series branch only; exposed for overlap checks."""
    return _series(_check(z))


def exp1_cfrac(z) -> complex:
    """Continued-fraction branch only; exposed for overlap checks."""
    z = _check(z)
    return np.exp(-z) * _cfrac_scaled(z)
