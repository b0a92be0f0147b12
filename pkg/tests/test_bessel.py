import math

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings, strategies as st

from sector_dirac.bessel import (
    LOG_DBL_MAX,
    bessel_k,
    bessel_k_asym_large,
    bessel_k_asym_small,
    bessel_k_derivative,
    bessel_k_recurrence_residual,
    integrated_square,
    log_bessel_k,
)
from sector_dirac.errors import BesselOverflow, InvalidArgument, OutOfDomain


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 12.0), st.floats(1e-6, 300.0))
def test_against_mpmath(nu, r):
    want = mpmath.log(mpmath.besselk(nu, r))
    assert log_bessel_k(nu, r) == pytest.approx(float(want), rel=1e-13, abs=1e-13)


def test_against_scipy_grid():
    nus = np.linspace(0, 6, 13)
    r = np.geomspace(1e-4, 200, 40)
    for nu in nus:
        np.testing.assert_allclose(bessel_k(nu, r), sc.kv(nu, r), rtol=1e-12)


def test_order_is_even():
    r = np.geomspace(0.01, 10, 7)
    np.testing.assert_array_equal(bessel_k(-0.3, r), bessel_k(0.3, r))


def test_half_integer_closed_form():
    r = np.geomspace(1e-3, 50, 30)
    want = np.sqrt(np.pi / (2 * r)) * np.exp(-r) * (1 + 1 / r)
    np.testing.assert_allclose(bessel_k(1.5, r), want, rtol=1e-13)


def test_small_r_series():
    # K_ν(r) ~ Γ(ν)/2 (r/2)^{-ν} with relative correction O(r^{2 min(ν,1-ν)})
    r = 1e-9
    for nu in (0.2, 0.5, 0.8, 1.3):
        tol = 3 * (r / 2) ** (2 * min(nu, 1 - nu, 0.5))
        assert bessel_k(nu, r) == pytest.approx(bessel_k_asym_small(nu, r), rel=tol)
    assert bessel_k(0.0, 1e-12) == pytest.approx(-math.log(1e-12) + math.log(2) - np.euler_gamma,
                                                 rel=1e-12)
    assert bessel_k_asym_small(0.0, 1e-3) == pytest.approx(-math.log(1e-3))
    with pytest.raises(InvalidArgument):
        bessel_k_asym_small(-0.5, 1.0)


def test_large_r_asymptote():
    assert bessel_k(0.3, 500.0) == pytest.approx(bessel_k_asym_large(0.3, 500.0), rel=1e-3)


def test_derivative_matches_finite_difference():
    r, h = 1.7, 1e-5
    fd = (bessel_k(0.4, r + h) - bessel_k(0.4, r - h)) / (2 * h)
    assert bessel_k_derivative(0.4, r) == pytest.approx(fd, rel=1e-8)


def test_recurrence_residual():
    r = np.geomspace(1e-3, 30, 25)
    # the three terms are of size K_{ν+1}; that sets the scale of the residual
    for nu in (0.0, 0.3, 2.2):
        assert np.max(bessel_k_recurrence_residual(nu, r) / bessel_k(nu + 1, r)) < 1e-13
    with pytest.raises(InvalidArgument):
        bessel_k_recurrence_residual(-1.0, r)


def test_overflow_raises_with_log_value():
    with pytest.raises(BesselOverflow) as info:
        bessel_k(200.0, 1e-3)
    err = info.value
    assert err.log_value > err.threshold == LOG_DBL_MAX
    # log space keeps working
    want = float(mpmath.log(mpmath.besselk(200, mpmath.mpf("1e-3"))))
    assert log_bessel_k(200.0, 1e-3) == pytest.approx(want, rel=1e-13)


def test_domain():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(OutOfDomain):
            bessel_k(0.5, bad)


def test_shapes():
    assert isinstance(bessel_k(0.5, 1.0), float)
    assert bessel_k(0.5, np.ones((2, 3))).shape == (2, 3)


def test_integrated_square_against_mpmath():
    nu = 0.7
    want = mpmath.quad(lambda x: mpmath.besselk(nu, x) ** 2 * x, [1e-4, 1e-2, 1])
    assert integrated_square(nu, 1e-4) == pytest.approx(float(want), rel=1e-10)
