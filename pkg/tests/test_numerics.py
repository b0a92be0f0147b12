import math

import mpmath
import numpy as np
import pytest

from sector_dirac.numerics import (
    cutoff,
    cutoff_derivative,
    cutoff_integrals,
    derivative,
    fd_weights,
    gauss_legendre_panels,
    isclose_phase,
    power_law_slope,
    singular_exponent,
)


def test_fd_weights_central():
    c = fd_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2)
    np.testing.assert_allclose(c[1], [-0.5, 0.0, 0.5])
    np.testing.assert_allclose(c[2], [1.0, -2.0, 1.0])


def test_derivative_on_nonuniform_grid():
    x = np.geomspace(0.1, 3.0, 80)
    np.testing.assert_allclose(derivative(np.sin(x), x), np.cos(x), rtol=0, atol=1e-6)
    with pytest.raises(ValueError):
        derivative(np.ones(3), np.arange(3.0))


def test_power_law_fits():
    r = np.geomspace(1e-9, 1e-4, 40)
    assert power_law_slope(r, 3 * r ** -0.4) == pytest.approx(-0.4, abs=1e-12)
    # Bessel-type profile A r^{-p} + B r^{p}, complex phase ignored
    y = -2j * (r ** -0.3 + 40.0 * r ** 0.3)
    assert singular_exponent(r, y) == pytest.approx(0.3, rel=1e-6)


def test_cutoff_shape_and_smoothness():
    x = np.linspace(0, 3, 301)
    c = cutoff(x)
    assert np.all(c[x <= 1] == 1.0) and np.all(c[x >= 2] == 0.0)
    assert np.all(np.diff(c) <= 0)
    h = 1e-6
    xm = np.linspace(1.05, 1.95, 19)
    fd = (cutoff(xm + h) - cutoff(xm - h)) / (2 * h)
    np.testing.assert_allclose(cutoff_derivative(xm), fd, atol=1e-8)
    # all derivatives vanish at the joins
    assert abs(cutoff_derivative(np.array([1.0 + 1e-3]))[0]) < 1e-100


def test_cutoff_integrals_against_mpmath():
    c0, c1 = cutoff_integrals()
    psi = lambda t: mpmath.exp(-1 / t) if t > 0 else mpmath.mpf(0)
    chi = lambda x: psi(2 - x) / (psi(2 - x) + psi(x - 1))
    dchi = lambda x: mpmath.diff(chi, x)
    with mpmath.workdps(25):
        want0 = 2 * (1 + mpmath.quad(lambda x: chi(x) ** 2, [1, 1.5, 2]))
        want1 = 2 * mpmath.quad(lambda x: dchi(x) ** 2, [1, 1.5, 2])
    assert c0 == pytest.approx(float(want0), rel=1e-13)
    assert c1 == pytest.approx(float(want1), rel=1e-10)


def test_gauss_legendre_panels():
    x, w = gauss_legendre_panels(0.0, math.pi, 8, 10)
    assert np.sum(w * np.sin(x)) == pytest.approx(2.0, rel=1e-14)


def test_isclose_phase():
    assert isclose_phase(0.0, 2 * math.pi, 1e-12)
    assert isclose_phase(-math.pi, math.pi, 1e-12)
    assert not isclose_phase(0.0, 0.1, 1e-3)
