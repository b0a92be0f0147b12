"""Small numerical utilities: finite-difference weights on arbitrary nodes,
power-law fits and a smooth cutoff profile."""

import math

import numpy as np
from scipy.optimize import minimize_scalar


def fd_weights(z, x, m):
    """Fornberg weights for derivatives 0..m at ``z`` from nodes ``x``.

    Returns an array ``c`` with ``c[k, j]`` the weight of ``f(x[j])`` in the
    k-th derivative.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    c = np.zeros((m + 1, n))
    c1, c4 = 1.0, x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


def derivative(values, x, order=6):
    """First derivative of samples on a strictly increasing grid.

    Uses ``order + 1``-point stencils, centred in the interior and shifted
    near the ends.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values)
    n = x.shape[0]
    width = order + 1
    if n < width:
        raise ValueError(f"need at least {width} nodes")
    out = np.empty(values.shape, dtype=np.result_type(values, float))
    half = width // 2
    for i in range(n):
        start = min(max(i - half, 0), n - width)
        sl = slice(start, start + width)
        w = fd_weights(x[i], x[sl], 1)[1]
        out[i] = np.tensordot(w, values[sl], axes=(0, 0))
    return out


def power_law_slope(x, y):
    """Least-squares slope of log|y| against log x."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.abs(np.asarray(y)))
    return float(np.polyfit(lx, ly, 1)[0])


def singular_exponent(r, y, p_bounds=(1e-3, 3.0)):
    """Fit y ≈ A r^{-p} + B r^{p} near r = 0 and return p.

    A plain log-log fit is biased by the r^{2p} relative correction that
    Bessel-type singularities carry; here ``A``, ``B`` are solved linearly
    for each trial ``p`` and ``p`` is found by a bounded scalar search.
    """
    r = np.asarray(r, dtype=float)
    y = np.abs(np.asarray(y))

    def resid(p):
        basis = np.stack([r ** (-p), r ** p], axis=1) / y[:, None]
        coef, *_ = np.linalg.lstsq(basis, np.ones_like(y), rcond=None)
        return float(np.sum((basis @ coef - 1.0) ** 2))

    res = minimize_scalar(resid, bounds=p_bounds, method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


def _psi(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def cutoff(x):
    """C-infinity profile equal to 1 on [0, 1] and 0 on [2, inf)."""
    x = np.asarray(x, dtype=float)
    a = _psi(2.0 - x)
    b = _psi(x - 1.0)
    return a / (a + b)


def cutoff_derivative(x):
    """d/dx of ``cutoff``."""
    x = np.asarray(x, dtype=float)
    a = _psi(2.0 - x)
    b = _psi(x - 1.0)
    out = np.zeros_like(x)
    mid = (x > 1.0) & (x < 2.0)
    u, v = 2.0 - x[mid], x[mid] - 1.0
    da = -a[mid] / u ** 2
    db = b[mid] / v ** 2
    out[mid] = (da * (a[mid] + b[mid]) - a[mid] * (da + db)) / (a[mid] + b[mid]) ** 2
    return out


def gauss_legendre_panels(a, b, panels, order):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * w
    return nodes.ravel(), np.broadcast_to(weights, nodes.shape).ravel().copy()


def cutoff_integrals(order=64, panels=16):
    """(∫ χ(|t|)² dt, ∫ χ'(|t|)² dt) over the real line, χ = ``cutoff``."""
    x, w = gauss_legendre_panels(1.0, 2.0, panels, order)
    c0 = 2.0 * (1.0 + float(np.sum(w * cutoff(x) ** 2)))
    c1 = 2.0 * float(np.sum(w * cutoff_derivative(x) ** 2))
    return c0, c1


def isclose_phase(a, b, tol):
    """Whether two phases agree modulo 2π within ``tol``."""
    d = (a - b + math.pi) % (2.0 * math.pi) - math.pi
    return abs(d) <= tol
