import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sector_dirac.angular import (
    AngularMode,
    SectorGeometry,
    angular_grid,
    apply_K,
    coupling_matrix,
    gauss_legendre,
    lambda_kappa,
    mode_function,
    mode_sign,
    quadrature_order,
    sigma3_coupling,
)
from sector_dirac.errors import InvalidArgument, OutOfDomain
from sector_dirac.spinor import SIGMA3

omegas = st.floats(0.05 * math.pi, 0.98 * math.pi)


def test_geometry_validation_and_constants():
    with pytest.raises(InvalidArgument):
        SectorGeometry(0.0)
    with pytest.raises(InvalidArgument):
        SectorGeometry(math.pi)
    g = SectorGeometry.from_fraction(3, 4)
    assert g.omega == pytest.approx(0.75 * math.pi)
    assert not g.convex and SectorGeometry(math.pi / 2).convex
    assert g.lambda0 == pytest.approx(2 / 3)
    assert g.nu0 == pytest.approx((g.lambda0 - 1) / 2)


def test_eigenvalue_formula():
    g = SectorGeometry(math.pi / 4)
    assert lambda_kappa(0, g) == pytest.approx(2.0)
    assert lambda_kappa(-1, g) == pytest.approx(-2.0)
    assert AngularMode(1, g).eigenvalue == pytest.approx(6.0)
    assert [mode_sign(k) for k in (-2, -1, 0, 1)] == [-1, 1, -1, 1]


@settings(max_examples=25, deadline=None)
@given(omegas, st.integers(-6, 6))
def test_mode_is_eigenfunction(omega, kappa):
    g = SectorGeometry(omega)
    th = angular_grid(g, 801)
    u = mode_function(kappa, g, th)
    ku = apply_K(u, g)
    lam = lambda_kappa(kappa, g)
    err = np.max(np.abs(ku - lam * u)) / max(1.0, abs(lam))
    assert err < 1e-6


@settings(max_examples=25, deadline=None)
@given(omegas)
def test_orthonormal_with_independent_quadrature(omega):
    # scipy adaptive quadrature as an oracle for the Gram entries
    from scipy.integrate import quad

    g = SectorGeometry(omega)
    for j, k in ((0, 0), (0, 1), (-1, 2), (3, 3)):
        def f(t, part):
            v = np.vdot(mode_function(j, g, t), mode_function(k, g, t))
            return v.real if part == 0 else v.imag
        val = quad(f, -omega, omega, args=(0,), limit=200)[0]
        assert val == pytest.approx(float(j == k), abs=1e-10)


def test_coupling_matches_quadrature():
    g = SectorGeometry(0.6 * math.pi)
    th, w = gauss_legendre(g, quadrature_order(g, 12))
    for j in range(-5, 5):
        for k in range(-5, 5):
            uj, uk = mode_function(j, g, th), mode_function(k, g, th)
            num = np.sum(w * np.einsum("tc,tc->t", uj.conj(), uk @ SIGMA3.T))
            assert num.imag == pytest.approx(0.0, abs=1e-13)
            assert sigma3_coupling(j, k, g) == pytest.approx(num.real, abs=1e-13)


def test_coupling_values_and_matrix():
    assert sigma3_coupling(0, 1) == pytest.approx(2 / math.pi)
    assert sigma3_coupling(0, -1) == pytest.approx(2 / math.pi)
    assert sigma3_coupling(0, 3) == pytest.approx(-2 / (3 * math.pi))
    assert sigma3_coupling(0, 2) == 0.0
    ks = list(range(-4, 4))
    m = coupling_matrix(ks)
    np.testing.assert_allclose(m, m.T, atol=0)
    for a, j in enumerate(ks):
        for b, k in enumerate(ks):
            assert m[a, b] == pytest.approx(sigma3_coupling(j, k))
    # σ3 is a contraction, so the truncation has spectrum in [-1, 1]
    assert np.max(np.abs(np.linalg.eigvalsh(coupling_matrix(range(-40, 40))))) <= 1.0 + 1e-12


def test_mode_domain_errors():
    g = SectorGeometry(1.0)
    with pytest.raises(OutOfDomain):
        mode_function(0, g, np.array([1.1]))
    with pytest.raises(InvalidArgument):
        apply_K(np.zeros((5, 2)), g)


def test_quadrature_order_grows_with_kappa():
    g = SectorGeometry(0.9 * math.pi)
    assert quadrature_order(g, 20) > quadrature_order(g, 2)
