"""Massive Dirac operator on a truncated sector: assembly, eigen-solves and
diagnostics (Weyl quotients, virial defect, square identity, radial
boundary identity).

The operator is expanded on channels κ = 0..N-1, each carrying the pair of
angular modes u_κ, u_{-(κ+1)}. The mass term mσ3 couples every channel
through the matrix of σ3 between modes; see ``coupling_operator``.
"""

from dataclasses import dataclass, field
import math

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sps
import scipy.sparse.linalg as spla

from . import _backend
from .angular import SectorGeometry, coupling_matrix, mode_function
from .errors import ConfigurationError, InvalidArgument, PreconditionError
from .fiber import (
    ExtensionParameter,
    FiberOperator,
    RadialGrid,
    _inner_closure,
    channel_layout,
    interpolation_block,
    kinetic_entries,
)
from .numerics import cutoff, cutoff_derivative, cutoff_integrals, gauss_legendre_panels
from .spinor import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    boundary_matrix,
    e_ang,
)

DENSE_LIMIT = 2000
SINGULAR_SHIFT = 1e-7
RESIDUAL_TOL = 1e-8
CONTINUUM_DEFECT = 0.05


def coupling_operator(n_modes, kind="polar"):
    """σ3 restricted to modes -N..N-1, indexed by mode number + N.

    ``kind="galerkin"`` returns the plain truncation Σ_N. The default
    ``"polar"`` returns its unitary polar factor sign(Σ_N): the truncation
    alone has singular values well below 1 in the highest modes, which
    lets truncated states sink into the mass gap. The polar factor is
    again real symmetric, squares to the identity and keeps the odd-offset
    sparsity pattern, so charge conjugation symmetry survives.
    """
    if n_modes < 1:
        raise InvalidArgument("need at least one channel")
    sigma = coupling_matrix(np.arange(-n_modes, n_modes))
    if kind == "galerkin":
        return sigma
    if kind != "polar":
        raise InvalidArgument(f"unknown coupling kind {kind!r}")
    w, v = np.linalg.eigh(sigma)
    if np.min(np.abs(w)) < 1e-10:
        raise ArithmeticError("truncated sigma3 coupling is singular")
    polar = (v * np.sign(w)) @ v.T
    polar[np.abs(polar) < 1e-15] = 0.0
    return 0.5 * (polar + polar.T)


@dataclass
class SectorAssembly:
    """Discrete operator together with the bookkeeping needed to read it.

    Attributes
    ----------
    matrix : scipy.sparse.csr_matrix
        Real symmetric discretisation of the Dirac operator.
    kinetic : scipy.sparse.csr_matrix
        Massless part.
    sigma3 : scipy.sparse.csr_matrix
        Discrete σ3 in the same unknowns; ``matrix = kinetic + m * sigma3``.
    channel, component, position : ndarray
        For each unknown: channel κ, 0 for the f (upper) or 1 for the g
        (lower) unknown, and its radius.
    """

    geometry: SectorGeometry
    mass: float
    gamma: ExtensionParameter | None
    n_modes: int
    grid: RadialGrid
    coupling: str
    matrix: sps.csr_matrix
    kinetic: sps.csr_matrix
    sigma3: sps.csr_matrix
    channel: np.ndarray
    component: np.ndarray
    position: np.ndarray

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def bandwidth(self):
        coo = self.matrix.tocoo()
        return int(np.max(np.abs(coo.row - coo.col))) if coo.nnz else 0

    def banded_lower(self):
        """Lower band storage ab[d, j] = M[j + d, j]."""
        coo = sps.tril(self.matrix).tocoo()
        bw = self.bandwidth()
        ab = np.zeros((bw + 1, self.dimension))
        ab[coo.row - coo.col, coo.col] = coo.data
        return ab

    def channel_weights(self, vec):
        """Squared norm of ``vec`` carried by each channel."""
        return np.bincount(self.channel, weights=np.abs(vec) ** 2, minlength=self.n_modes)


def assemble_sector(geom, m, gamma, n_modes, grid, coupling="polar", bc_outer="infinite-mass"):
    """Assemble the massive operator on channels 0..n_modes-1.

    Parameters
    ----------
    gamma : ExtensionParameter or None
        Required when ω > π/2 (the κ = 0 channel needs a closure); ignored
        otherwise.
    coupling : {"polar", "galerkin"}
        Form of the inter-channel mass coupling, see ``coupling_operator``.

    Notes
    -----
    Unknowns are interleaved radius-major (all channels of one radial slot
    are adjacent), which keeps the bandwidth near 4 * n_modes.
    """
    if n_modes < 2:
        raise InvalidArgument("need n_modes >= 2")
    if geom.omega > math.pi / 2 and gamma is None:
        raise ConfigurationError("omega > pi/2 needs an extension parameter gamma")
    if gamma is not None and not isinstance(gamma, ExtensionParameter):
        gamma = ExtensionParameter.from_gamma(gamma)
    mass = float(m)
    coup = coupling_operator(n_modes, coupling)

    layouts, robins = [], []
    for kappa in range(n_modes):
        robin, swapped = _inner_closure(geom, kappa, gamma, grid)
        layouts.append(channel_layout(grid, swapped, bc_outer))
        robins.append(robin)

    # Global numbering sorts unknowns by (radial slot, component, channel);
    # cell i and face i + 1 share slot i.
    faces, cells = grid.faces, grid.nodes
    keys, ch_list, comp_list, pos_list = [], [], [], []
    for kappa, lay in enumerate(layouts):
        for comp, (kind, idx) in enumerate((lay.upper(), lay.lower())):
            slot = idx if kind == "cell" else idx - 1
            pos = cells[idx] if kind == "cell" else faces[idx]
            keys.append(np.stack([slot, np.full(idx.shape, comp), np.full(idx.shape, kappa)]))
            ch_list.append(np.full(idx.shape, kappa))
            comp_list.append(np.full(idx.shape, comp))
            pos_list.append(pos)
    keys = np.concatenate(keys, axis=1)
    order = np.lexsort(keys[::-1])
    dim = keys.shape[1]
    glob = np.empty(dim, dtype=int)
    glob[order] = np.arange(dim)
    channel = np.concatenate(ch_list)[order]
    component = np.concatenate(comp_list)[order]
    position = np.concatenate(pos_list)[order]

    # Per channel: global indices of (upper, lower) unknowns.
    offsets, start = [], 0
    for lay in layouts:
        nu_, nl_ = len(lay.upper()[1]), len(lay.lower()[1])
        offsets.append((glob[start:start + nu_], glob[start + nu_:start + nu_ + nl_]))
        start += nu_ + nl_

    kr, kc, kv = [], [], []
    for kappa, lay in enumerate(layouts):
        op = FiberOperator(kappa, geom)
        up, low = offsets[kappa]
        cidx, fidx = (low, up) if lay.swapped else (up, low)
        rows, cols, vals, diag = kinetic_entries(grid, op.eigenvalue, op.parity, lay, robins[kappa])
        kr += [cidx[rows], fidx[cols]]
        kc += [fidx[cols], cidx[rows]]
        kv += [vals, vals]
        if diag is not None:
            kr.append(cidx[[diag[0]]])
            kc.append(cidx[[diag[0]]])
            kv.append(np.array([diag[1]]))
    kinetic = sps.csr_matrix(
        (np.concatenate(kv), (np.concatenate(kr), np.concatenate(kc))), shape=(dim, dim)
    )

    def mode_row(k, comp):
        return (k if comp == 0 else -(k + 1)) + n_modes

    sr, sc, sv = [], [], []

    def couple(gi, gj, c):
        sr.append(gi); sc.append(gj); sv.append(np.full(gi.shape, c))

    for p in range(n_modes):
        for q in range(n_modes):
            for cp in (0, 1):
                for cq in (0, 1):
                    c = coup[mode_row(p, cp), mode_row(q, cq)]
                    if c == 0.0:
                        continue
                    kind_p, idx_p = layouts[p].upper() if cp == 0 else layouts[p].lower()
                    kind_q, idx_q = layouts[q].upper() if cq == 0 else layouts[q].lower()
                    gp, gq = offsets[p][cp], offsets[q][cq]
                    if kind_p == kind_q:
                        _, ip, iq = np.intersect1d(idx_p, idx_q, return_indices=True)
                        couple(gp[ip], gq[iq], c)
                    elif kind_p == "face":
                        blk = interpolation_block(grid, idx_p, idx_q).tocoo()
                        sr.append(gp[blk.row]); sc.append(gq[blk.col]); sv.append(c * blk.data)
                    else:
                        blk = interpolation_block(grid, idx_q, idx_p).tocoo()
                        sr.append(gp[blk.col]); sc.append(gq[blk.row]); sv.append(c * blk.data)
    sigma3 = sps.csr_matrix(
        (np.concatenate(sv), (np.concatenate(sr), np.concatenate(sc))), shape=(dim, dim)
    )
    matrix = (kinetic + mass * sigma3).tocsr()
    return SectorAssembly(geom, mass, gamma, n_modes, grid, coupling, matrix,
                          kinetic, sigma3, channel, component, position)


@dataclass
class SpectralReport:
    """Eigenvalues nearest zero with their certification.

    ``residual_norms[i]`` is ‖Mv - λv‖/‖v‖ for the i-th pair. The tag is
    ``"refine"`` whenever the iteration did not converge or a residual
    exceeds the certification tolerance.
    """

    eigenvalues: np.ndarray
    residual_norms: np.ndarray
    convergence_tag: str
    parameters: dict = field(default_factory=dict)
    eigenvectors: np.ndarray | None = field(default=None, repr=False)
    window_counts: dict = field(default_factory=dict)

    @property
    def min_abs_eig(self):
        return float(np.min(np.abs(self.eigenvalues))) if len(self.eigenvalues) else math.nan

    def certified(self, tol=RESIDUAL_TOL):
        return self.residual_norms <= tol

    def to_dict(self):
        return {
            "parameters": self.parameters,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residual_norms": [float(x) for x in self.residual_norms],
            "min_abs_eig": self.min_abs_eig,
            "convergence_tag": self.convergence_tag,
            "window_counts": {k: int(v) for k, v in self.window_counts.items()},
        }


def _as_operator(matrix):
    if isinstance(matrix, SectorAssembly):
        return matrix.matrix
    if sps.issparse(matrix):
        return matrix.tocsr()
    return np.asarray(matrix)


def eigen_solve(matrix, k, seed=0, sigma=0.0, maxiter=None, tol=RESIDUAL_TOL):
    """The ``k`` eigenvalues nearest ``sigma`` with residual certification.

    Dense solves are used up to ``DENSE_LIMIT`` unknowns; beyond that a
    shift-invert Lanczos iteration started from a seeded random vector.
    """
    mat = _as_operator(matrix)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise InvalidArgument("matrix must be square")
    if not (1 <= k <= n):
        raise InvalidArgument(f"k must lie in [1, {n}]")
    tag = "converged"
    if n <= DENSE_LIMIT or k >= n - 1:
        dense = mat.toarray() if sps.issparse(mat) else mat
        w, v = sla.eigh(dense)
        pick = np.argsort(np.abs(w - sigma), kind="stable")[:k]
        w, v = w[pick], v[:, pick]
    else:
        v0 = np.random.default_rng(seed).standard_normal(n)
        shift = sigma
        for attempt in range(3):
            try:
                w, v = spla.eigsh(mat, k=k, sigma=shift, which="LM", v0=v0, maxiter=maxiter)
                break
            except spla.ArpackNoConvergence as exc:
                w, v = exc.eigenvalues, exc.eigenvectors
                tag = "refine"
                break
            except RuntimeError:
                # Exactly singular at the shift: move it off the eigenvalue.
                shift = sigma + SINGULAR_SHIFT * 10.0 ** attempt
        else:
            raise ArithmeticError("shift-invert factorisation failed")
    order = np.argsort(w, kind="stable")
    w, v = np.real(w[order]), v[:, order]
    res = np.linalg.norm(mat @ v - v * w, axis=0) / np.linalg.norm(v, axis=0)
    if len(w) < k or np.any(res > tol):
        tag = "refine"
    return SpectralReport(np.asarray(w), res, tag, eigenvectors=v)


INERTIA_NUDGE = 1e-8


def _inertia(ab, shift):
    """Eigenvalues below ``shift`` from the band factorisation.

    Without pivoting, LDL^T breaks down when a pivot nearly vanishes (for
    instance at shift 0, where the diagonal of a Dirac matrix is mostly
    zero). The shift is then moved down by INERTIA_NUDGE times the median
    nonzero band entry, growing tenfold per attempt, so eigenvalues within that
    distance below ``shift`` may be missed.
    """
    ab = np.ascontiguousarray(ab, dtype=np.float64)
    mag = np.abs(ab[ab != 0.0])
    scale = float(np.median(mag)) if mag.size else 0.0
    step = INERTIA_NUDGE * max(scale, abs(shift), 1e-300)
    s = float(shift)
    for attempt in range(8):
        count, weak = _backend.banded_negative_count(ab, s)
        if weak == 0:
            return int(count)
        s = float(shift) - step * 10.0 ** attempt
    raise ArithmeticError(f"inertia count unstable near shift {shift}")


def _band(matrix):
    if isinstance(matrix, SectorAssembly):
        return matrix.banded_lower()
    mat = sps.csr_matrix(_as_operator(matrix))
    mat.sum_duplicates()
    coo = sps.tril(mat).tocoo()
    bw = int(np.max(coo.row - coo.col)) if coo.nnz else 0
    ab = np.zeros((bw + 1, mat.shape[0]))
    ab[coo.row - coo.col, coo.col] = coo.data
    return ab


def negative_count(matrix, shift):
    """Number of eigenvalues below ``shift`` by LDL^T inertia on the band."""
    return _inertia(_band(matrix), shift)


def count_in_window(matrix, lo, hi):
    """Number of eigenvalues in [lo, hi) by two inertia counts."""
    if hi < lo:
        raise InvalidArgument("empty window")
    ab = _band(matrix)
    return _inertia(ab, hi) - _inertia(ab, lo)


def sector_spectrum(geom, m, gamma, n_modes, grid, k=20, seed=0, windows=(),
                    coupling="polar"):
    """Assemble, solve and count; returns the report and the assembly."""
    asm = assemble_sector(geom, m, gamma, n_modes, grid, coupling=coupling)
    report = eigen_solve(asm, min(k, asm.dimension), seed=seed)
    report.parameters = {
        "omega": geom.omega,
        "mass": float(m),
        "gamma_phase": None if gamma is None else ExtensionParameter(
            gamma.s if isinstance(gamma, ExtensionParameter) else 0.0).s,
        "n_modes": n_modes,
        "r_min": grid.r_min,
        "r_max": grid.r_max,
        "n_r": grid.n,
        "spacing": grid.spacing,
        "coupling": coupling,
        "dimension": asm.dimension,
    }
    for lo, hi in windows:
        report.window_counts[f"[{lo:g},{hi:g})"] = count_in_window(asm, lo, hi)
    return report, asm


# ----------------------------------------------------------------------------
# Weyl quotients


@dataclass(frozen=True)
class WeylProbe:
    n: float
    mass: float
    lambda_target: float
    quotient: float


def weyl_probe_positive_mass(n, m, lam):
    """Plane-wave probe u_n(x) = w e^{i k x1} χ(|x1|/n) χ(|x2|/n), k = √(λ²-m²),
    as a callable on (x1, x2) arrays."""
    if not lam > m:
        raise InvalidArgument("need lambda > m")
    if n < 1:
        raise InvalidArgument("need n >= 1")
    k = math.sqrt(lam * lam - m * m)
    w = np.array([math.sqrt((lam + m) / (lam - m)), 1.0], dtype=complex)

    def probe(x1, x2):
        env = cutoff(np.abs(x1) / n) * cutoff(np.abs(x2) / n)
        return (np.exp(1j * k * x1) * env)[..., None] * w

    def gradient(x1, x2):
        c1, c2 = cutoff(np.abs(x1) / n), cutoff(np.abs(x2) / n)
        d1 = np.sign(x1) * cutoff_derivative(np.abs(x1) / n) / n * c2
        d2 = np.sign(x2) * cutoff_derivative(np.abs(x2) / n) / n * c1
        ph = np.exp(1j * k * x1)
        return ((1j * k * c1 * c2 + d1) * ph)[..., None] * w, (d2 * ph)[..., None] * w

    return probe, gradient


def weyl_quotient_positive_mass(n, m, lam):
    """‖(D - λ)u_n‖/‖u_n‖ for the plane-wave probe, from closed-form integrals.

    With c0 = ∫χ(|t|)² dt and c1 = ∫χ'(|t|)² dt over the real line the
    quotient is √(2 c1/c0)/n, independent of λ and m.
    """
    if not lam > m:
        raise InvalidArgument("need lambda > m")
    if m < 0:
        raise InvalidArgument("positive-mass probe needs m >= 0")
    if n < 1:
        raise InvalidArgument("need n >= 1")
    c0, c1 = cutoff_integrals()
    weight = (lam + m) / (lam - m) + 1.0  # |w|², cancels
    num = weight * 2.0 * c1 * c0
    den = weight * n * n * c0 * c0
    return math.sqrt(num / den)


def weyl_probe_negative_mass(n, m, lam):
    """Edge-state probe (1, -i) e^{m x1 - iλ x2} χ(|x2|/n) on the half-plane
    x1 > 0, as a callable on (x1, x2)."""
    if not m < 0:
        raise InvalidArgument("negative-mass probe needs m < 0")
    w = np.array([1.0, -1j])
    bc = boundary_matrix((-1.0, 0.0)) @ w
    if np.max(np.abs(bc - w)) != 0.0:
        raise PreconditionError("edge spinor violates the boundary condition")

    def probe(x1, x2):
        return (np.exp(m * x1 - 1j * lam * x2) * cutoff(np.abs(x2) / n))[..., None] * w

    def gradient(x1, x2):
        ph = np.exp(m * x1 - 1j * lam * x2)
        c = cutoff(np.abs(x2) / n)
        dc = np.sign(x2) * cutoff_derivative(np.abs(x2) / n) / n
        return (m * ph * c)[..., None] * w, (ph * (-1j * lam * c + dc))[..., None] * w

    return probe, gradient


def weyl_quotient_negative_mass(n, m, lam):
    """‖(D - λ)u_n‖/‖u_n‖ for the edge probe: √(c1/c0)/n, independent of λ."""
    if not m < 0:
        raise InvalidArgument("negative-mass probe needs m < 0")
    if n < 1:
        raise InvalidArgument("need n >= 1")
    weyl_probe_negative_mass(n, m, lam)  # boundary condition check
    c0, c1 = cutoff_integrals()
    return math.sqrt((2.0 * c1 / (2.0 * abs(m) * n)) / (2.0 * n * c0 / (2.0 * abs(m))))


def dirac_apply(grad_x, grad_y, u, m):
    """(-iσ·∇ + mσ3) u from sampled gradients."""
    return -1j * (grad_x @ SIGMA1.T + grad_y @ SIGMA2.T) + m * (u @ SIGMA3.T)


# ----------------------------------------------------------------------------
# Virial identity


@dataclass(frozen=True)
class VirialDiagnostic:
    """λ‖v‖² - m⟨σ3 v, v⟩ for an eigencandidate.

    ``relative_defect`` divides by |λ|‖v‖². A genuine eigenpair has zero
    defect and hence |λ| ≤ |m|; a pair outside the gap with relative defect
    at least 0.05 is flagged as discretised continuum.
    """

    eigenvalue: float
    defect: float
    relative_defect: float
    within_gap: bool
    continuum: bool

    @property
    def accounted(self):
        return self.within_gap or self.continuum


def virial_check(v, lam, m, sigma3=None, threshold=CONTINUUM_DEFECT):
    """Virial defect |λ‖v‖² - m⟨σ3v, v⟩|.

    ``v`` is either a spinor field with trailing axis 2 (``sigma3`` None) or
    a vector of discrete unknowns together with the discrete ``sigma3``.
    """
    v = np.asarray(v)
    if sigma3 is None:
        if v.shape[-1] != 2:
            raise InvalidArgument("spinor samples need a trailing axis of length 2")
        s3v = v * np.array([1.0, -1.0])
    else:
        s3v = sigma3 @ v
    norm2 = float(np.real(np.vdot(v, v)))
    expect = float(np.real(np.vdot(v, s3v)))
    defect = abs(lam * norm2 - m * expect)
    rel = defect / (abs(lam) * norm2) if lam != 0 and norm2 > 0 else math.inf
    within = abs(lam) <= abs(m)
    return VirialDiagnostic(float(lam), defect, rel, within, (not within) and rel >= threshold)


def virial_audit(report, assembly, threshold=CONTINUUM_DEFECT):
    """Virial diagnostics for every certified pair of a report."""
    out = []
    for i in np.flatnonzero(report.certified()):
        out.append(virial_check(report.eigenvectors[:, i], report.eigenvalues[i],
                                assembly.mass, assembly.sigma3, threshold))
    return out


# ----------------------------------------------------------------------------
# Square identity ‖Du‖² = ‖σ·∇u‖² + m²‖u‖² + m‖u‖²_∂


@dataclass(frozen=True)
class SquareIdentityTerms:
    dirac: float
    kinetic: float
    mass: float
    boundary: float
    gradient: float

    def residual(self, m):
        return abs(self.dirac - self.kinetic - m * m * self.mass - m * self.boundary)


def edge_violation(u, geom, r):
    """max |B u - u| on both edges at radii ``r``."""
    w = geom.omega
    up = u(r, np.full_like(r, w))
    lo = u(r, np.full_like(r, -w))
    b_up = boundary_matrix(e_ang(w))
    n_lo = e_ang(-w)
    b_lo = boundary_matrix((-n_lo.vx, -n_lo.vy))
    return float(max(np.max(np.abs(up @ b_up.T - up), initial=0.0),
                     np.max(np.abs(lo @ b_lo.T - lo), initial=0.0)))


def square_identity_terms(u, geom, m, r_max, n_r, n_theta, bc_tol=1e-10):
    """Quadrature of the terms of the square identity on a polar grid.

    ``u(r, θ)`` returns spinors with trailing axis 2; θ is measured from the
    sector axis. Derivatives are second-order differences, the radial rule
    is the midpoint rule and the angular rule the trapezoid rule, so all
    terms converge at second order.
    """
    dr = r_max / n_r
    r = (np.arange(n_r) + 0.5) * dr
    theta = np.linspace(-geom.omega, geom.omega, n_theta)
    viol = edge_violation(u, geom, r)
    if viol > bc_tol:
        raise PreconditionError(f"boundary condition violated: max |Bu - u| = {viol:.3e}")
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    vals = u(rr, tt)
    ur = np.gradient(vals, r, axis=0, edge_order=2)
    ut = np.gradient(vals, theta, axis=1, edge_order=2)
    c, s = np.cos(tt)[..., None], np.sin(tt)[..., None]
    gx = c * ur - s * ut / rr[..., None]
    gy = s * ur + c * ut / rr[..., None]
    wt = np.full(n_theta, theta[1] - theta[0])
    wt[[0, -1]] *= 0.5
    weight = dr * rr * wt[None, :]
    du = dirac_apply(gx, gy, vals, m)
    sdu = dirac_apply(gx, gy, vals, 0.0)

    def integ(field):
        return float(np.sum(weight * np.sum(np.abs(field) ** 2, axis=-1)))

    edge = np.sum(np.abs(vals[:, 0]) ** 2 + np.abs(vals[:, -1]) ** 2, axis=-1)
    return SquareIdentityTerms(
        dirac=integ(du),
        kinetic=integ(sdu),
        mass=integ(vals),
        boundary=float(np.sum(edge) * dr),
        gradient=integ(gx) + integ(gy),
    )


def square_identity_residual(u, geom, m, r_max=8.0, n_r=400, n_theta=200):
    """|‖Du‖² - ‖σ·∇u‖² - m²‖u‖² - m‖u‖²_∂| for a field satisfying the edge
    boundary conditions."""
    return square_identity_terms(u, geom, m, r_max, n_r, n_theta).residual(m)


def mode_field(kappa, geom, profile):
    """Field (r, θ) ↦ profile(r) u_κ(θ)."""
    def field(r, theta):
        return np.asarray(profile(r))[..., None] * mode_function(kappa, geom, theta)
    return field


# ----------------------------------------------------------------------------
# Radial boundary identity


def radial_reality_check(a, da, r_min=1e-30, r_max=80.0, panels=96, order=24):
    """Boundary defect 2|Re ∫ conj(a') (a/r) r dr| over (r_min, r_max).

    The integrand is the derivative of |a|²/2, so the value is
    | |a(r_max)|² - |a(r_min)|² |: it vanishes for profiles with a(0) = 0 and
    decay at infinity and returns |a(0)|² otherwise. ``a`` and ``da`` are
    callables; the integral is done by composite Gauss-Legendre in log r.
    """
    t, w = gauss_legendre_panels(math.log(r_min), math.log(r_max), panels, order)
    r = np.exp(t)
    integrand = np.real(np.conj(da(r)) * a(r)) * r
    return 2.0 * abs(float(np.sum(w * integrand)))


def radial_reality_check_samples(r, weights, a, da):
    """Sampled variant of ``radial_reality_check`` with given quadrature."""
    r = np.asarray(r, dtype=float)
    return 2.0 * abs(float(np.sum(weights * np.real(np.conj(da) * a / r) * r)))
