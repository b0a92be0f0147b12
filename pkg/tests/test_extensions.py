import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sector_dirac.angular import SectorGeometry
from sector_dirac.errors import InvalidArgument, PreconditionError
from sector_dirac.extensions import (
    audit_extension,
    charge_conj_admissible,
    distinguished_extension,
    generator_ratio,
    generator_ratio_transport,
    gradient_lp_integrals,
    h_half_membership,
    l4_corner_integrals,
    l4_exponent,
    scale_invariant,
    scaled_gamma,
    sobolev_threshold,
)
from sector_dirac.fiber import ExtensionParameter

GEOM = SectorGeometry(0.75 * math.pi)
phases = st.floats(0.0, 2 * math.pi, exclude_max=True)
scales = st.floats(0.05, 20.0)


@settings(max_examples=50)
@given(phases, scales, scales)
def test_scaling_is_a_group_action(s, a, b):
    g = ExtensionParameter(s)
    two = scaled_gamma(scaled_gamma(g, a, GEOM), b, GEOM)
    one = scaled_gamma(g, a * b, GEOM)
    assert abs(np.exp(1j * two.s) - np.exp(1j * one.s)) < 1e-9


def test_scaling_closed_form():
    g = ExtensionParameter(math.pi / 2)
    out = scaled_gamma(g, 2.0, GEOM)
    assert math.tan(out.s / 2) == pytest.approx(2.0 ** -GEOM.lambda0)


def test_fixed_points_and_admissibility():
    assert scale_invariant(ExtensionParameter(0.0), GEOM)
    assert scale_invariant(ExtensionParameter(math.pi), GEOM)
    assert not scale_invariant(ExtensionParameter(1.0), GEOM)
    assert charge_conj_admissible(1) and charge_conj_admissible(-1)
    assert not charge_conj_admissible(1j)


def test_argument_checks():
    with pytest.raises(PreconditionError):
        scaled_gamma(ExtensionParameter(0.0), 2.0, SectorGeometry(0.4 * math.pi))
    with pytest.raises(InvalidArgument):
        scaled_gamma(ExtensionParameter(0.0), -1.0, GEOM)
    with pytest.raises(InvalidArgument):
        h_half_membership(GEOM, "other")


def test_ratio_transport_matches_scaling():
    g = ExtensionParameter(1.0)
    got = generator_ratio_transport(GEOM, g, 2.0, np.array([1e-12]))[0]
    assert got == pytest.approx(2.0 ** -GEOM.lambda0, rel=1e-3)
    assert generator_ratio(GEOM, ExtensionParameter(0.0), 0.5) == 0.0


def test_exponents():
    nu = abs(GEOM.nu0)
    assert l4_exponent(GEOM) == pytest.approx(4 * (1 - nu) - 1)
    assert sobolev_threshold(GEOM) == pytest.approx(2 / (nu + 1))
    assert 4 / 3 < sobolev_threshold(GEOM)


def test_l4_integral_against_mpmath():
    nu1 = GEOM.nu0 + 1
    want = mpmath.quad(lambda r: mpmath.besselk(nu1, r) ** 4 * r, [1e-3, 1e-2, 0.1, 1])
    got = l4_corner_integrals(GEOM, [1e-3])[0]
    assert got == pytest.approx(float(want) / (2 * GEOM.omega), rel=1e-10)


def test_l4_diverges_and_gradient_converges():
    l4 = l4_corner_integrals(GEOM, [1e-4, 1e-6, 1e-8])
    assert l4[2] / l4[1] > 10 and l4[1] / l4[0] > 10
    grad = gradient_lp_integrals(GEOM, 4 / 3, np.array([1e-4, 1e-8, 1e-12]))
    assert grad[2] / grad[1] - 1 < 1e-3


@pytest.mark.parametrize("frac", [0.55, 0.75, 0.95])
def test_membership(frac):
    g = SectorGeometry(frac * math.pi)
    hi = h_half_membership(g, "nu0+1-part")
    lo = h_half_membership(g, "nu0-part")
    assert not hi.member and hi.exponent_fit == pytest.approx(hi.exponent_theory, rel=0.01)
    # small |ν0| makes the local slope converge slowly
    assert lo.member and lo.exponent_fit == pytest.approx(lo.exponent_theory, rel=0.05)


@pytest.mark.parametrize("phase, want", [(0.0, (True, True, True)),
                                         (math.pi, (True, True, False)),
                                         (math.pi / 2, (False, False, False))])
def test_audit_table(phase, want):
    a = audit_extension(GEOM, ExtensionParameter(phase))
    assert (a.charge_conjugation, a.scaling, a.h_half) == want
    assert a.distinguished == all(want)


def test_distinguished_extension():
    g, audit = distinguished_extension(GEOM)
    assert g.is_plus_one and audit.distinguished
