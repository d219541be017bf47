"""Built-in test functions and Laplace transform pairs.

Each entry records where the function stops being analytic, how fast it
grows in the complex plane, and (for Laplace pairs) the abscissa of the
right-most singularity of the transform. The registry is built once at
import time and is read-only.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Dict

import numpy as np

from .errors import LookupFailure
from .special import exp1_scaled
from .verify import FunctionSpec, GrowthClass
from .weeks import LaplacePair

_ALG = GrowthClass.ALGEBRAIC
_ALG_HALF = GrowthClass.ALGEBRAIC_TIMES_EXP_HALF
_ENT_EXP = GrowthClass.ENTIRE_EXPONENTIAL
_ENT_GAUSS = GrowthClass.ENTIRE_GAUSSIAN


def _sech(w):
    # 2 e^{-w} / (1 + e^{-2w}) on the right half plane, mirrored on the left
    w = np.asarray(w)
    s = np.where(np.real(w) >= 0, 1.0, -1.0)
    with np.errstate(under="ignore", over="ignore"):
        e = np.exp(-s * w)
        return 2.0 * e / (1.0 + e * e)


def _rational_derivative(shift: float, scale: float = 1.0) -> Callable[[int], Callable]:
    """Derivatives of ``1 / (scale x + shift)``."""
    from math import factorial

    def deriv(m: int) -> Callable:
        c = (-1) ** m * factorial(m) * scale ** m
        return lambda x: c / (scale * np.asarray(x) + shift) ** (m + 1)

    return deriv


def _ones(x):
    return np.ones_like(np.asarray(x), dtype=np.result_type(np.asarray(x), float))


def _sech_poles(count: int = 4):
    return tuple(s * 8j * (2 * k + 1) for k in range(count) for s in (1, -1))


def _build_functions() -> Dict[str, FunctionSpec]:
    sq = lambda x: np.asarray(x) ** 2
    specs = [
        FunctionSpec("f1", lambda x: 1.0 / (np.asarray(x) + 1.0), (-1,), -1.0, _ALG, (0.0, 1.5),
                     derivative=_rational_derivative(1.0), rho=1.0, description="1/(x+1)"),
        FunctionSpec("f2", lambda x: np.exp(-np.asarray(x)) / (4.0 * np.asarray(x) + 9.0), (-2.25,), -1.0,
                     _ALG, (0.0, 1.5), rho=1.5, description="exp(-x)/(4x+9)"),
        FunctionSpec("f3", lambda x: _sech(np.pi * np.asarray(x) / 16.0), _sech_poles(), 0.0, _ALG,
                     (0.0, 1.5, 0.5), rho=2.0, description="sech(pi x/16)"),
        FunctionSpec("glf1", lambda x: np.exp(-0.5 * np.asarray(x)) / (1.0 + np.asarray(x)), (-1,), -1.0,
                     _ALG_HALF, (0.0,), rho=1.0, description="exp(-x/2)/(1+x)"),
        FunctionSpec("glf2", lambda x: np.exp(-2.0 * np.asarray(x) / 3.0) / (sq(x) + 4.0), (2j, -2j), -2.0,
                     _ALG_HALF, (0.0,), rho=1.0, description="exp(-2x/3)/(x^2+4)"),
        FunctionSpec("interp1", lambda x: np.exp(-np.asarray(x)) / (np.asarray(x) + 1.0), (-1,), -1.0,
                     _ALG, (0.0,), rho=1.0, description="exp(-x)/(x+1)"),
        FunctionSpec("interp2", lambda x: 1.0 / (sq(x) + 9.0), (3j, -3j), -2.0, _ALG, (0.0,),
                     rho=float(np.sqrt(1.5)), description="1/(x^2+9)"),
        FunctionSpec("interp3", lambda x: _sech(np.pi * np.asarray(x) / 16.0), _sech_poles(), 0.0, _ALG,
                     (0.0,), rho=2.0, description="sech(pi x/16)"),
        FunctionSpec("scaled", lambda x: np.exp(-np.asarray(x)) / (9.0 + 4.0 * np.asarray(x)), (-2.25,), -1.0,
                     _ALG, (0.0,), rho=1.5, description="exp(-x)/(9+4x)"),
        FunctionSpec("cos", np.cos, (), 0.0, _ENT_EXP, description="cos(x)"),
        FunctionSpec("exp_sin", lambda x: np.exp(-np.asarray(x)) * np.sin(x), (), 0.0, _ENT_EXP,
                     description="exp(-x) sin(x)"),
        FunctionSpec("exp", lambda x: np.exp(-np.asarray(x)), (), 0.0, _ENT_EXP, description="exp(-x)"),
        FunctionSpec("gauss", lambda x: np.exp(-sq(x)), (), 0.0, _ENT_GAUSS, description="exp(-x^2)"),
        FunctionSpec("gauss_sin", lambda x: np.exp(-sq(x)) * np.sin(x), (), 0.0, _ENT_GAUSS,
                     description="exp(-x^2) sin(x)"),
        FunctionSpec("gauss_cos", lambda x: np.exp(-sq(x)) * np.cos(x), (), 0.0, _ENT_GAUSS,
                     description="exp(-x^2) cos(x)"),
        FunctionSpec("one", _ones, (), 0.0, _ALG, description="1"),
    ]
    return {s.name: s for s in specs}


def _build_pairs() -> Dict[str, LaplacePair]:
    pairs = [
        LaplacePair("recip1p", exp1_scaled, lambda t: 1.0 / (np.asarray(t) + 1.0), sigma0=0.0, rho=1.0,
                    description="f(t)=1/(t+1), F(s)=exp(s) E1(s)"),
        LaplacePair("exp", lambda s: 1.0 / (np.asarray(s) + 1.0), lambda t: np.exp(-np.asarray(t)),
                    sigma0=-1.0, rho=None, description="f(t)=exp(-t), F(s)=1/(s+1)"),
        # single Laguerre-function pair for the defaults sigma=1, nu=2
        LaplacePair("unit", lambda s: 1.0 / np.asarray(s), _ones, sigma0=0.0, rho=None,
                    description="f(t)=1, F(s)=1/s"),
    ]
    return {p.name: p for p in pairs}


FUNCTIONS = MappingProxyType(_build_functions())
LAPLACE_PAIRS = MappingProxyType(_build_pairs())


def get_function(name: str) -> FunctionSpec:
    try:
        return FUNCTIONS[name]
    except KeyError:
        raise LookupFailure(f"unknown function {name!r}; available: {', '.join(sorted(FUNCTIONS))}") from None


def get_laplace_pair(name: str) -> LaplacePair:
    try:
        return LAPLACE_PAIRS[name]
    except KeyError:
        raise LookupFailure(f"unknown Laplace pair {name!r}; available: {', '.join(sorted(LAPLACE_PAIRS))}") from None
