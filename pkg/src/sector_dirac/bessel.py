"""Modified Bessel functions of the second kind for real order.

K_ν(r) = ∫_0^∞ exp(-r cosh t) cosh(νt) dt is evaluated by the trapezoid rule
in t. The integrand already decays double-exponentially, so step halving
converges geometrically; the integrand is rescaled by its peak at
t* = asinh(ν/r) and the result is assembled in log space.
"""

import math

import numpy as np

from . import _backend
from .errors import BesselOverflow, InvalidArgument, OutOfDomain

LOG_DBL_MAX = math.log(np.finfo(float).max)


def _radii(r):
    arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise OutOfDomain("bessel_k is defined for finite r > 0")
    return np.ascontiguousarray(arr.ravel())


def log_bessel_k(nu, r):
    """Natural log of K_|ν|(r); never overflows."""
    scalar = np.ndim(r) == 0
    shape = np.shape(r)
    out = _backend.log_bessel_k(abs(float(nu)), _radii(r)).reshape(shape)
    return float(out) if scalar else out


def bessel_k(nu, r):
    """K_ν(r) for real ν and r > 0.

    Raises
    ------
    BesselOverflow
        If the value exceeds the double range. The error carries the log of
        the value and the threshold ``log(DBL_MAX)``.
    """
    logs = log_bessel_k(nu, r)
    worst = np.max(logs)
    if worst > LOG_DBL_MAX:
        bad = np.asarray(r).ravel()[int(np.argmax(np.ravel(logs)))] if np.ndim(r) else r
        raise BesselOverflow(abs(float(nu)), float(bad), float(worst), LOG_DBL_MAX)
    return np.exp(logs) if np.ndim(logs) else math.exp(logs)


def bessel_k_derivative(nu, r):
    """dK_ν/dr = -(K_{ν-1} + K_{ν+1})/2."""
    return -0.5 * (bessel_k(nu - 1.0, r) + bessel_k(nu + 1.0, r))


def bessel_k_asym_small(nu, r):
    """Leading small-r form: Γ(ν)/2 (r/2)^{-ν} for ν > 0 and -log r for ν = 0."""
    if nu < 0:
        raise InvalidArgument("canonicalise the order to |nu| before calling")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise OutOfDomain("r must be positive")
    if nu == 0:
        out = -np.log(r)
    else:
        out = 0.5 * math.gamma(nu) * (0.5 * r) ** (-nu)
    return float(out) if out.ndim == 0 else out


def bessel_k_asym_large(nu, r):
    """Leading large-r form (π/(2r))^{1/2} e^{-r}."""
    r = np.asarray(r, dtype=float)
    out = np.sqrt(np.pi / (2.0 * r)) * np.exp(-r)
    return float(out) if out.ndim == 0 else out


def bessel_k_recurrence_residual(nu, r):
    """|K'_ν + (ν/r) K_ν + K_{ν-1}| for ν ≥ 0, derivative taken analytically."""
    if nu < 0:
        raise InvalidArgument("the recurrence is stated for nu >= 0")
    k = bessel_k(nu, r)
    km1 = bessel_k(nu - 1.0, r)
    dk = -0.5 * (km1 + bessel_k(nu + 1.0, r))
    return np.abs(dk + (nu / np.asarray(r)) * k + km1)


def integrated_square(nu, eps, upper=1.0, n=4000):
    """∫_ε^upper K_ν(r)² r dr by Gauss-Legendre in log r."""
    x, w = np.polynomial.legendre.leggauss(n // 4)
    lo, hi = math.log(eps), math.log(upper)
    edges = np.linspace(lo, hi, 5)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        t = 0.5 * (b - a) * x + 0.5 * (a + b)
        rr = np.exp(t)
        total += 0.5 * (b - a) * np.sum(w * np.exp(2.0 * log_bessel_k(nu, rr)) * rr * rr)
    return total
