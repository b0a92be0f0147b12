"""Angular operator K = σ3(-2i∂θ) + 1 on (-ω, ω) with infinite-mass edges.

Its eigenvalues are λ_κ = π(1 + 2κ)/(2ω), κ ∈ Z, with eigenspinors

    u_κ(θ) = (e^{iθμ}, s_κ i e^{-iθμ}) / (2√ω),   μ = (λ_κ - 1)/2,

where s_κ = (-1)^{κ+1}.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument, OutOfDomain
from .spinor import SIGMA3

_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class SectorGeometry:
    """Sector {(r cos θ, r sin θ) : |θ - θ0| < ω} with half-aperture ω."""

    omega: float
    theta0: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.omega < math.pi):
            raise InvalidArgument(f"half-aperture must lie in (0, pi), got {self.omega}")

    @classmethod
    def from_fraction(cls, p, q, theta0=0.0):
        """Sector with ω = pπ/q."""
        return cls(math.pi * p / q, theta0)

    @property
    def convex(self):
        return self.omega <= math.pi / 2

    @property
    def lambda0(self):
        return math.pi / (2.0 * self.omega)

    @property
    def nu0(self):
        return (math.pi - 2.0 * self.omega) / (4.0 * self.omega)


@dataclass(frozen=True)
class AngularMode:
    kappa: int
    geometry: SectorGeometry

    @property
    def eigenvalue(self):
        return lambda_kappa(self.kappa, self.geometry)

    def __call__(self, theta):
        return mode_function(self.kappa, self.geometry, theta)


def lambda_kappa(kappa, geom):
    """Eigenvalue π(1 + 2κ)/(2ω) of K."""
    return math.pi * (1 + 2 * int(kappa)) / (2.0 * geom.omega)


def mode_sign(kappa):
    """s_κ = (-1)^{κ+1}."""
    return 1 if int(kappa) % 2 else -1


def mode_function(kappa, geom, theta):
    """Eigenspinor u_κ at angle(s) θ, shape ``theta.shape + (2,)``.

    Angles are measured from the sector axis, so θ ∈ [-ω, ω].
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > geom.omega * (1 + _DOMAIN_SLACK)):
        raise OutOfDomain(f"angle outside [-{geom.omega}, {geom.omega}]")
    mu = 0.5 * (lambda_kappa(kappa, geom) - 1.0)
    amp = 0.5 / math.sqrt(geom.omega)
    phase = np.exp(1j * mu * theta)
    out = np.empty(theta.shape + (2,), dtype=complex)
    out[..., 0] = amp * phase
    out[..., 1] = amp * mode_sign(kappa) * 1j * np.conj(phase)
    return out


def gauss_legendre(geom, n):
    """Gauss-Legendre nodes and weights on (-ω, ω)."""
    x, w = np.polynomial.legendre.leggauss(n)
    return geom.omega * x, geom.omega * w


def quadrature_order(geom, kappa_max, tol=1e-13):
    """Node count integrating products of modes with |κ| ≤ kappa_max exactly
    to ``tol``.

    The product of two modes oscillates with frequency at most
    |λ_max - 1|, i.e. total phase Φ = 2ω|λ_max - 1| over the interval; a
    Gauss rule with n > Φ/2 + 20 points is exact far below ``tol``.
    """
    lam = abs(lambda_kappa(kappa_max, geom)) + abs(lambda_kappa(-kappa_max - 1, geom))
    phase = 2.0 * geom.omega * lam
    return int(math.ceil(phase / 2.0 + 20 + 2 * max(0.0, -math.log10(tol) - 13)))


# 4th-order first-derivative stencils on a uniform grid.
_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_FORWARD = np.array(
    [
        [-25.0, 48.0, -36.0, 16.0, -3.0],
        [-3.0, -10.0, 18.0, -6.0, 1.0],
    ]
) / 12.0


def _derivative_4th(values, h):
    n = values.shape[0]
    out = np.empty_like(values)
    out[2:-2] = sum(c * values[k:n - 4 + k] for k, c in enumerate(_CENTRAL) if c != 0.0)
    for row in range(2):
        out[row] = np.tensordot(_FORWARD[row], values[:5], axes=(0, 0))
        out[n - 1 - row] = -np.tensordot(_FORWARD[row], values[::-1][:5], axes=(0, 0))
    return out / h


def angular_grid(geom, n):
    """Uniform grid of ``n`` points spanning [-ω, ω] inclusive."""
    return np.linspace(-geom.omega, geom.omega, n)


def apply_K(field, geom):
    """Apply σ3(-2i∂θ) + 1 to a spinor field sampled on ``angular_grid``.

    Parameters
    ----------
    field : ndarray, shape (n, 2)
        Samples at the ``n`` uniformly spaced angles from -ω to ω.
    """
    field = np.asarray(field, dtype=complex)
    n = field.shape[0]
    if n < 8:
        raise InvalidArgument("apply_K needs at least 8 angular samples")
    h = 2.0 * geom.omega / (n - 1)
    dfield = _derivative_4th(field, h)
    return -2j * dfield @ SIGMA3.T + field


def sigma3_coupling(j, kappa, geom=None):
    """⟨u_j, σ3 u_κ⟩ over (-ω, ω); independent of ω.

    Zero when κ - j is even, 2(-1)^{(n-1)/2}/(πn) for odd n = κ - j.
    """
    n = int(kappa) - int(j)
    if n % 2 == 0:
        return 0.0
    sign = 1.0 if ((n - 1) // 2) % 2 == 0 else -1.0
    return 2.0 * sign / (math.pi * n)


def coupling_matrix(kappas):
    """Matrix of σ3 between the listed modes (real symmetric)."""
    k = np.asarray(kappas, dtype=int)
    n = k[None, :] - k[:, None]
    odd = (n % 2) != 0
    out = np.zeros(n.shape)
    nn = n[odd]
    out[odd] = 2.0 * np.where(((nn - 1) // 2) % 2 == 0, 1.0, -1.0) / (math.pi * nn)
    return out
