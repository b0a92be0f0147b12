"""Criteria singling out one self-adjoint extension of the non-convex
sector: charge conjugation, scale invariance and H^{1/2} regularity.

The extension D^γ adds the generator
(1 + γ) K_{ν0}(r) u_0(θ) - i(1 - γ) K_{ν0+1}(r) u_{-1}(θ) to the minimal
domain. Near the corner K_{ν0} ~ r^{-|ν0|} and K_{ν0+1} ~ r^{-(1-|ν0|)}.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .angular import SectorGeometry
from .bessel import bessel_k, log_bessel_k
from .errors import InvalidArgument, PreconditionError
from .fiber import ExtensionParameter
from .numerics import gauss_legendre_panels, isclose_phase, power_law_slope

PHASE_TOL = 1e-12
SCALING_PROBES = (0.5, 2.0, 10.0)


def _require_nonconvex(geom):
    if geom.omega <= math.pi / 2:
        raise PreconditionError("operator already self-adjoint, no choice needed")


def _param(gamma):
    if isinstance(gamma, ExtensionParameter):
        return gamma
    return ExtensionParameter.from_gamma(gamma)


def scaled_gamma(gamma, alpha, geom):
    """Parameter of V_α D^γ V_α^{-1}, with (V_α u)(x) = α u(αx).

    tan(s̃/2) = tan(s/2) / α^{λ0}; γ = -1 (infinite tangent) is a fixed
    point.
    """
    _require_nonconvex(geom)
    if not alpha > 0 or not math.isfinite(alpha):
        raise InvalidArgument("alpha must be a positive real")
    gamma = _param(gamma)
    if gamma.is_minus_one:
        return ExtensionParameter(math.pi)
    t = math.tan(0.5 * gamma.s) / alpha ** geom.lambda0
    return ExtensionParameter(2.0 * math.atan(t))


def charge_conj_admissible(gamma):
    """Whether the domain of D^γ is stable under charge conjugation (γ = ±1)."""
    gamma = _param(gamma)
    return gamma.is_plus_one or gamma.is_minus_one


def scale_invariant(gamma, geom, alphas=SCALING_PROBES):
    """Whether γ is a fixed point of the scaling flow for every probe α."""
    gamma = _param(gamma)
    return all(isclose_phase(scaled_gamma(gamma, a, geom).s, gamma.s, PHASE_TOL)
               for a in alphas)


def generator_ratio(geom, gamma, r):
    """b(r)/a(r) of the generator a₊ + γσ3a₊, i.e. -tan(s/2) K_{ν0+1}/K_{ν0}."""
    _require_nonconvex(geom)
    gamma = _param(gamma)
    t = gamma.half_tan()
    nu = geom.nu0
    return -t * np.exp(log_bessel_k(nu + 1, r) - log_bessel_k(nu, r))


def generator_ratio_transport(geom, gamma, alpha, r):
    """Measured factor ratio(αr)/ratio(r) at small radii ``r``.

    Near the corner it tends to α^{-λ0}, the factor by which scaling
    multiplies tan(s/2).
    """
    return generator_ratio(geom, gamma, alpha * np.asarray(r)) / generator_ratio(geom, gamma, r)


def sobolev_threshold(geom):
    """Largest p with ∇(K_{ν0} u_0) locally in L^p: 2/(|ν0| + 1)."""
    return 2.0 / (abs(geom.nu0) + 1.0)


def l4_exponent(geom):
    """Exponent q in |K_{ν0+1} u_{-1}|⁴ r ~ r^{-q} near the corner."""
    return 4.0 * (geom.nu0 + 1.0) - 1.0


def _corner_integral(density, eps, upper=1.0, panels=48, order=20):
    t, w = gauss_legendre_panels(math.log(eps), math.log(upper), panels, order)
    r = np.exp(t)
    return float(np.sum(w * density(r) * r))


def l4_corner_integrals(geom, eps):
    """∫_ε^1 ∫ |K_{ν0+1}(r) u_{-1}(θ)|⁴ r dθ dr for each ε.

    |u_{-1}|² = 1/(2ω) pointwise, so the angular integral is 1/(2ω).
    """
    nu1 = geom.nu0 + 1.0
    dens = lambda r: np.exp(4.0 * log_bessel_k(nu1, r)) * r / (2.0 * geom.omega)
    return np.array([_corner_integral(dens, e) for e in np.atleast_1d(eps)])


def gradient_lp_integrals(geom, p, eps):
    """∫_ε^1 ∫ |∇(K_{ν0} u_0)|^p r dθ dr for each ε.

    |∇(K u_0)|² = (K'² + ν0² K²/r²)/(2ω), constant in θ.
    """
    nu = geom.nu0
    w = geom.omega

    def dens(r):
        k = bessel_k(nu, r)
        dk = -0.5 * (bessel_k(nu - 1, r) + bessel_k(nu + 1, r))
        grad2 = (dk * dk + nu * nu * k * k / (r * r)) / (2.0 * w)
        return grad2 ** (0.5 * p) * 2.0 * w * r

    return np.array([_corner_integral(dens, e) for e in np.atleast_1d(eps)])


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of an H^{1/2} membership test for one generator component."""

    component: str
    member: bool
    criterion: str
    exponent_theory: float
    exponent_fit: float
    threshold: float | None = None
    integrals: tuple = field(default=())


FIT_EPS = np.geomspace(1e-6, 1e-2, 9)


def h_half_membership(geom, component, p=4.0 / 3.0):
    """Decide whether one part of the extension generator lies in H^{1/2}.

    ``"nu0-part"`` (K_{ν0} u_0) is shown to be in W^{1,p} for the given
    p < 2/(|ν0| + 1), which embeds into H^{1/2}; the diagnostics record the
    local exponent of the integrand and the integrals over shrinking
    ε-discs. ``"nu0+1-part"`` (K_{ν0+1} u_{-1}) is shown to miss L⁴, into
    which H^{1/2} embeds: the L⁴ integral diverges like ε^{1-q} with
    q = 4(ν0 + 1) - 1 > 1, and q is recovered by a log-log fit.
    """
    _require_nonconvex(geom)
    if component == "nu0+1-part":
        vals = l4_corner_integrals(geom, FIT_EPS)
        q_fit = 1.0 - power_law_slope(FIT_EPS, vals)
        q = l4_exponent(geom)
        return MembershipVerdict(component, not q_fit > 1.0, "L4 embedding", q, q_fit,
                                 None, tuple(float(v) for v in vals))
    if component == "nu0-part":
        thr = sobolev_threshold(geom)
        r = np.geomspace(1e-8, 1e-5, 7)
        nu = geom.nu0
        k = bessel_k(nu, r)
        dk = -0.5 * (bessel_k(nu - 1, r) + bessel_k(nu + 1, r))
        dens = (dk * dk + nu * nu * k * k / (r * r)) ** (0.5 * p) * r
        q_fit = -power_law_slope(r, dens)
        q = p * (abs(nu) + 1.0) - 1.0
        vals = gradient_lp_integrals(geom, p, np.array([1e-4, 1e-8, 1e-12]))
        return MembershipVerdict(component, (q_fit < 1.0) and p < thr,
                                 f"W^(1,{p:.6g}) embedding", q, q_fit, thr,
                                 tuple(float(v) for v in vals))
    raise InvalidArgument("component must be 'nu0-part' or 'nu0+1-part'")


@dataclass(frozen=True)
class ExtensionAudit:
    gamma: ExtensionParameter
    charge_conjugation: bool
    scaling: bool
    h_half: bool
    notes: tuple = ()

    @property
    def distinguished(self):
        return self.charge_conjugation and self.scaling and self.h_half


def h_half_generator(geom, gamma):
    """Whether the generator of γ lies in H^{1/2}.

    The ν0 part always does; the ν0 + 1 part does not, so membership
    requires its coefficient (1 - γ) to vanish.
    """
    gamma = _param(gamma)
    low = h_half_membership(geom, "nu0-part")
    if gamma.is_plus_one:
        return low.member
    high = h_half_membership(geom, "nu0+1-part")
    return low.member and high.member


def audit_extension(geom, gamma):
    """The three distinguished-extension criteria for γ."""
    _require_nonconvex(geom)
    gamma = _param(gamma)
    return ExtensionAudit(
        gamma,
        charge_conj_admissible(gamma),
        scale_invariant(gamma, geom),
        h_half_generator(geom, gamma),
    )


def distinguished_extension(geom):
    """γ = 1 with its criteria verdicts; the only γ passing all three."""
    _require_nonconvex(geom)
    audit = audit_extension(geom, ExtensionParameter(0.0))
    return audit.gamma, audit
