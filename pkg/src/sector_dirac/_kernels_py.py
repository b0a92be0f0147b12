"""Pure numpy versions of the compiled kernels, used when the extension is
not built."""

import math

import numpy as np

_CUT = 50.0


def _phi(t, nu, r):
    return -r * np.cosh(t) + nu * t


def _edge(nu, r, tstar, phistar, direction):
    step = 1.0
    lo = tstar
    hi = tstar + direction * step
    while True:
        if direction < 0 and hi <= 0.0:
            return 0.0
        if _phi(hi, nu, r) - phistar < -_CUT:
            break
        lo = hi
        step *= 2.0
        hi = tstar + direction * step
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _phi(mid, nu, r) - phistar < -_CUT:
            hi = mid
        else:
            lo = mid
    return hi


def _scaled(t, nu, r, phistar):
    return np.exp(_phi(t, nu, r) - phistar) * 0.5 * (1.0 + np.exp(-2.0 * nu * t))


def _log_bessel_k_scalar(nu, r):
    tstar = math.asinh(nu / r)
    phistar = float(_phi(tstar, nu, r))
    a = 0.0
    b = _edge(nu, r, tstar, phistar, 1.0)
    symmetric = True
    if tstar > 0.0:
        lo = _edge(nu, r, tstar, phistar, -1.0)
        if lo > 0.0:
            a, symmetric = lo, False
    n = 16
    h = (b - a) / n
    total = float(np.sum(_scaled(a + h * np.arange(1, n + 1), nu, r, phistar)))
    if symmetric:
        total += 0.5 * float(_scaled(a, nu, r, phistar))
    estimate = total * h
    for level in range(1, 16):
        prev = estimate
        total += float(np.sum(_scaled(a + h * (np.arange(n) + 0.5), nu, r, phistar)))
        n *= 2
        h *= 0.5
        estimate = total * h
        if level >= 2 and abs(estimate - prev) <= 1e-14 * estimate:
            return phistar + math.log(estimate)
    raise ArithmeticError(f"quadrature did not settle for nu={nu}, r={r}")


def log_bessel_k(nu, r):
    """Vectorised log K_|nu|(r) over a float64 array of radii."""
    r = np.ascontiguousarray(r, dtype=np.float64)
    if np.any(r <= 0.0):
        raise ValueError("bessel_k requires r > 0")
    anu = abs(float(nu))
    return np.array([_log_bessel_k_scalar(anu, float(x)) for x in r])


def banded_negative_count(ab, shift):
    """Inertia count of LDL^T(A - shift*I) for a symmetric band matrix held
    in lower storage ab[d, j] = A[j + d, j].

    Returns (negative pivots, weak pivots), a pivot being weak when it is
    below 1e-10 of the summed magnitudes that cancelled to produce it
    (shifted diagonal plus every elimination update).
    """
    w = np.array(ab, dtype=np.float64, copy=True)
    bw = w.shape[0] - 1
    n = w.shape[1]
    w[0] -= shift
    acc = np.abs(w[0]).copy()
    p_idx, q_idx = np.nonzero(np.tril(np.ones((bw, bw), dtype=bool)))
    p_idx += 1
    q_idx += 1
    count = weak = 0
    for j in range(n):
        d = w[0, j]
        if abs(d) <= acc[j] * 1e-10:
            weak += 1
        tiny = max(acc[j] * 1e-15, 1e-300)
        if abs(d) < tiny:
            d = -tiny if d < 0 else tiny
        if d < 0:
            count += 1
        top = min(bw, n - 1 - j)
        if top == 0:
            continue
        l = w[1:top + 1, j] / d
        acc[j + 1:j + top + 1] += np.abs(d * l * l)
        if top == bw:
            w[p_idx - q_idx, j + q_idx] -= d * l[p_idx - 1] * l[q_idx - 1]
        else:
            sel = p_idx <= top
            p, q = p_idx[sel], q_idx[sel]
            w[p - q, j + q] -= d * l[p - 1] * l[q - 1]
    return count, weak
