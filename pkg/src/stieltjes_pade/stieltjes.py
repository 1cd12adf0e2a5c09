"""Evaluation of F(s), f(xi) and G(xi) for a spectral measure.

With ``xi = -1/s`` the three functions are related by::

    F(s) = int dmu(z) / (s - z) = G(xi) = -xi * f(xi),
    f(xi) = int dmu(z) / (1 + z xi) = sum_n mu_n (-xi)**n.

F is analytic off the segment [0, 1] of the s-plane, f off (-inf, -1] of
the xi-plane.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .measure import MomentSequence, SpectralMeasure, integrate_density_complex

CUT_TOL = 1e-14

__all__ = [
    "MomentSequence", "SeriesValue", "eval_F", "eval_f", "eval_G",
    "series_eval_F", "s_from_xi", "xi_from_s", "on_s_cut", "on_xi_cut",
]


def on_s_cut(s) -> bool:
    s = complex(s)
    return abs(s.imag) <= CUT_TOL and 0.0 <= s.real <= 1.0


def on_xi_cut(xi) -> bool:
    xi = complex(xi)
    return abs(xi.imag) <= CUT_TOL and xi.real <= -1.0


def _scalar_or_array(fn, x):
    arr = np.asarray(x)
    if arr.ndim == 0:
        return fn(complex(arr))
    return np.array([fn(complex(v)) for v in arr.ravel()]).reshape(arr.shape)


def eval_F(measure: SpectralMeasure, s):
    """``F(s) = int_0^1 dmu(z) / (s - z)`` for s off the cut [0, 1].

    Accepts a scalar or an array of evaluation points.
    """
    def one(s):
        if on_s_cut(s):
            raise DomainError(f"s = {s} lies on the cut [0, 1]")
        value = 0j
        if measure.atoms:
            value += np.sum(measure.weights / (s - measure.positions))
        if measure.density is not None:
            value += integrate_density_complex(measure.density, lambda z: 1.0 / (s - z))
        return complex(value)

    return _scalar_or_array(one, s)


def eval_f(measure: SpectralMeasure, xi):
    """Auxiliary function ``f(xi) = int_0^1 dmu(z) / (1 + z xi)``."""
    def one(xi):
        if on_xi_cut(xi):
            raise DomainError(f"xi = {xi} lies on the cut (-inf, -1]")
        value = 0j
        if measure.atoms:
            value += np.sum(measure.weights / (1.0 + measure.positions * xi))
        if measure.density is not None:
            value += integrate_density_complex(measure.density, lambda z: 1.0 / (1.0 + z * xi))
        return complex(value)

    return _scalar_or_array(one, xi)


def eval_G(measure: SpectralMeasure, xi):
    """``G(xi) = -xi f(xi)``, equal to ``F(-1/xi)`` for nonzero xi."""
    f = eval_f(measure, xi)
    if np.ndim(xi):
        return -np.asarray(xi) * f
    return -complex(xi) * f


class SeriesValue(NamedTuple):
    """Truncated moment series value with a rigorous bound on the dropped tail."""

    value: complex
    truncation_bound: float
    terms: int


def series_eval_F(moments: MomentSequence, s) -> SeriesValue:
    """Partial sum ``sum_{m < count} mu_m / s**(m+1)`` of the expansion at infinity.

    Because the moments are non-increasing, the tail is bounded by
    ``mu_{count-1} |s|**(-count) / (|s| - 1)``.
    """
    s = complex(s)
    r = abs(s)
    if r <= 1.0:
        raise DomainError(f"moment series diverges for |s| = {r:g} <= 1")
    mu = np.asarray(moments, dtype=float)
    n = len(mu)
    powers = s ** -(np.arange(n) + 1.0)
    value = complex(np.sum(mu * powers))
    bound = float(mu[-1]) * r ** (-n) / (r - 1.0)
    return SeriesValue(value, bound, n)


def s_from_xi(xi):
    if np.any(np.asarray(xi) == 0):
        raise ValueError("xi = 0 corresponds to s = infinity")
    return -1.0 / np.asarray(xi) if np.ndim(xi) else -1.0 / xi


def xi_from_s(s):
    if np.any(np.asarray(s) == 0):
        raise ValueError("s = 0 corresponds to xi = infinity")
    return -1.0 / np.asarray(s) if np.ndim(s) else -1.0 / s
