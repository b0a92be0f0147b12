"""Radial fiber operators of the partial-wave decomposition.

Channel κ ≥ 0 carries v = a u_κ + b u_{-(κ+1)}, on which the massless Dirac
operator acts as

    d^κ (a, b) = ε (b' + (λ+1) b/(2r),  -a' + (λ-1) a/(2r)),   ε = (-1)^κ.

In the unknowns f = √r a, g = √r b this becomes ε [[0, A], [A†, 0]] with
A = ∂ + λ/(2r) = r^{-λ/2} ∂ r^{λ/2}. The discretisation keeps this factored
form on a staggered grid: f at cell centres, g on cell faces. The inner
face is removed by a wall (g = 0) or by the Robin relation that encodes an
extension parameter; the outer wall sets f = 0 just beyond r_max.
"""

from dataclasses import dataclass
import enum
import math

import numpy as np
import scipy.sparse as sps

from .angular import SectorGeometry, lambda_kappa, mode_function
from .bessel import bessel_k, log_bessel_k
from .errors import InvalidArgument, PreconditionError
from .numerics import derivative, isclose_phase


@dataclass(frozen=True)
class RadialGrid:
    """Staggered radial grid on [r_min, r_max] with ``n`` cells.

    ``faces`` holds the n + 1 cell boundaries and ``nodes`` the n cell
    centres (arithmetic midpoints for uniform spacing, geometric ones for
    log spacing).
    """

    r_min: float
    r_max: float
    n: int
    spacing: str = "uniform"

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max) or not math.isfinite(self.r_max):
            raise InvalidArgument(f"need 0 < r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if int(self.n) != self.n or self.n < 16:
            raise InvalidArgument(f"radial grid needs n >= 16 cells, got {self.n}")
        if self.spacing not in ("uniform", "log"):
            raise InvalidArgument(f"spacing must be 'uniform' or 'log', got {self.spacing!r}")

    @property
    def faces(self):
        if self.spacing == "uniform":
            return np.linspace(self.r_min, self.r_max, self.n + 1)
        return np.geomspace(self.r_min, self.r_max, self.n + 1)

    def _centres(self, faces):
        if self.spacing == "uniform":
            return 0.5 * (faces[:-1] + faces[1:])
        return np.sqrt(faces[:-1] * faces[1:])

    @property
    def nodes(self):
        return self._centres(self.faces)

    @property
    def cell_widths(self):
        return np.diff(self.faces)

    def _ghost_centre(self):
        """Centre of the virtual cell just outside r_max."""
        f = self.faces
        nxt = 2 * f[-1] - f[-2] if self.spacing == "uniform" else f[-1] ** 2 / f[-2]
        return float(self._centres(np.array([f[-1], nxt]))[0])

    @property
    def wall_radius(self):
        """Where the outer closure a = 0 acts: the ghost centre, half a cell
        beyond r_max."""
        return self._ghost_centre()

    @property
    def face_widths(self):
        """Dual widths of faces 1..n (distance between neighbouring centres)."""
        c = np.append(self.nodes, self._ghost_centre())
        return np.diff(c)

    def norm_dr(self, f):
        """Discrete L2(dr) norm on the nodes."""
        return math.sqrt(float(np.sum(self.cell_widths * np.abs(f) ** 2)))

    def norm_rdr(self, a):
        """Discrete L2(r dr) norm on the nodes."""
        return math.sqrt(float(np.sum(self.cell_widths * self.nodes * np.abs(a) ** 2)))


class Classification(enum.Enum):
    SELF_ADJOINT = "SelfAdjoint"
    DEFICIENCY_ONE = "DeficiencyOne"


def classify_self_adjoint(geom, kappa):
    """Self-adjointness of the minimal fiber operator in channel κ.

    The fiber is self-adjoint exactly when λ_κ ≥ 1, i.e. unless κ = 0 and
    ω > π/2. The test is done on the integer/aperture data so that ω = π/2
    is not at the mercy of rounding.
    """
    kappa = int(kappa)
    if kappa < 0:
        raise InvalidArgument("channels are indexed by kappa >= 0")
    if kappa >= 1 or geom.omega <= math.pi / 2:
        return Classification.SELF_ADJOINT
    return Classification.DEFICIENCY_ONE


def deficiency_count(geom, kappa_max=64):
    """Number of channels 0..kappa_max that are not self-adjoint."""
    return sum(
        classify_self_adjoint(geom, k) is Classification.DEFICIENCY_ONE
        for k in range(kappa_max + 1)
    )


@dataclass(frozen=True)
class ExtensionParameter:
    """Unit-modulus γ = e^{is}, stored by its phase s ∈ [0, 2π)."""

    s: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.s):
            raise InvalidArgument("extension phase must be finite")
        object.__setattr__(self, "s", math.fmod(self.s, 2 * math.pi) % (2 * math.pi))

    @classmethod
    def from_gamma(cls, gamma):
        gamma = complex(gamma)
        if abs(abs(gamma) - 1.0) > 1e-12:
            raise InvalidArgument(f"|gamma| must be 1, got {abs(gamma)}")
        return cls(math.atan2(gamma.imag, gamma.real))

    @property
    def gamma(self):
        return complex(math.cos(self.s), math.sin(self.s))

    @property
    def is_plus_one(self):
        return isclose_phase(self.s, 0.0, 1e-12)

    @property
    def is_minus_one(self):
        return isclose_phase(self.s, math.pi, 1e-12)

    def half_tan(self):
        """tan(s/2), infinite for γ = -1."""
        if self.is_minus_one:
            return math.inf
        if self.is_plus_one:
            return 0.0
        return math.tan(0.5 * self.s)


@dataclass(frozen=True)
class FiberOperator:
    kappa: int
    geometry: SectorGeometry

    def __post_init__(self):
        if int(self.kappa) < 0:
            raise InvalidArgument("channels are indexed by kappa >= 0")

    @property
    def eigenvalue(self):
        return lambda_kappa(self.kappa, self.geometry)

    @property
    def parity(self):
        return 1 if self.kappa % 2 == 0 else -1

    def apply(self, r, a, b, order=6):
        """Apply d^κ to sampled (a, b) with ``order``-accurate differences."""
        r = np.asarray(r, dtype=float)
        lam, eps = self.eigenvalue, self.parity
        da = derivative(a, r, order)
        db = derivative(b, r, order)
        return (eps * (db + (lam + 1) * b / (2 * r)),
                eps * (-da + (lam - 1) * a / (2 * r)))

    def apply_substituted(self, r, f, g, order=6):
        """Apply ε[iσ2 ∂ + σ1 λ/(2r)] to sampled (f, g)."""
        r = np.asarray(r, dtype=float)
        lam, eps = self.eigenvalue, self.parity
        return (eps * (derivative(g, r, order) + lam * g / (2 * r)),
                eps * (-derivative(f, r, order) + lam * f / (2 * r)))


def _require_deficient(geom):
    if geom.omega <= math.pi / 2:
        raise PreconditionError("fiber already self-adjoint: deficiency needs omega > pi/2")


@dataclass(frozen=True)
class RadialPair:
    """Radial spinor profile (a(r), b(r)) sampled at ``r``."""

    r: np.ndarray
    a: np.ndarray
    b: np.ndarray


def deficiency_element(geom, grid):
    """a₊ = (K_{ν0}, -i K_{ν0+1}), the L2 solution of (d⁰ - i)a₊ = 0."""
    _require_deficient(geom)
    r = grid.nodes
    nu = geom.nu0
    return RadialPair(r, bessel_k(nu, r).astype(complex), -1j * bessel_k(nu + 1, r))


def extension_generator(geom, grid, gamma):
    """a₊ + γσ3a₊ sampled on the grid nodes."""
    _require_deficient(geom)
    if not isinstance(gamma, ExtensionParameter):
        gamma = ExtensionParameter.from_gamma(gamma)
    r = grid.nodes
    nu = geom.nu0
    a = np.zeros(r.shape, dtype=complex)
    b = np.zeros(r.shape, dtype=complex)
    if not gamma.is_minus_one:
        a[:] = (1 + gamma.gamma) * bessel_k(nu, r)
    if not gamma.is_plus_one:
        b[:] = -1j * (1 - gamma.gamma) * bessel_k(nu + 1, r)
    return RadialPair(r, a, b)


def generator_image(geom, grid, gamma):
    """i(a₊ - γσ3a₊), the image of the generator under d^{0,γ}."""
    _require_deficient(geom)
    if not isinstance(gamma, ExtensionParameter):
        gamma = ExtensionParameter.from_gamma(gamma)
    r = grid.nodes
    nu = geom.nu0
    g = gamma.gamma
    return RadialPair(r, 1j * (1 - g) * bessel_k(nu, r), (1 + g) * bessel_k(nu + 1, r))


def interior_residual(op, pair, target, margin=5):
    """‖d pair - target‖ / ‖pair‖ in L2(r dr), dropping ``margin`` nodes at
    each end."""
    r = pair.r
    da, db = op.apply(r, pair.a, pair.b)
    sl = slice(margin, len(r) - margin)
    w = np.gradient(r)[sl] * r[sl]
    num = np.sum(w * (np.abs(da[sl] - target.a[sl]) ** 2 + np.abs(db[sl] - target.b[sl]) ** 2))
    den = np.sum(w * (np.abs(pair.a[sl]) ** 2 + np.abs(pair.b[sl]) ** 2))
    return math.sqrt(num / den)


def sector_extension_pair(geom, r, theta):
    """v± = K_{ν0}(r) u_0(θ) ∓ i K_{ν0+1}(r) u_{-1}(θ) at matching samples."""
    _require_deficient(geom)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    k0 = bessel_k(geom.nu0, r)[..., None]
    k1 = bessel_k(geom.nu0 + 1, r)[..., None]
    u0 = mode_function(0, geom, theta)
    um1 = mode_function(-1, geom, theta)
    return k0 * u0 - 1j * k1 * um1, k0 * u0 + 1j * k1 * um1


def robin_ratio(geom, gamma, r_face, r_node):
    """g(r_face)/f(r_node) for the generator of γ in substituted unknowns.

    Returns 0 for γ = 1 and ``inf`` for γ = -1. Computed in log space
    because both Bessel factors are large near the origin.
    """
    t = gamma.half_tan()
    if t == 0.0:
        return 0.0
    if math.isinf(t):
        return math.inf
    nu = geom.nu0
    log_mag = (0.5 * (math.log(r_face) - math.log(r_node))
               + log_bessel_k(nu + 1, r_face) - log_bessel_k(nu, r_node))
    return -t * math.exp(log_mag)


# ----------------------------------------------------------------------------
# Discretisation


@dataclass(frozen=True)
class ChannelLayout:
    """Placement of one channel's unknowns on the staggered grid.

    The component on cell centres occupies ``grid.nodes[cells]`` and the
    other one ``grid.faces[faces]``. Normally the upper component a sits
    on cells; ``swapped`` puts it on faces, which is how a wall a = 0 at
    r_min is imposed.
    """

    cells: np.ndarray
    faces: np.ndarray
    swapped: bool = False

    def upper(self):
        """("cell" | "face", indices) of the upper component."""
        return ("face", self.faces) if self.swapped else ("cell", self.cells)

    def lower(self):
        return ("cell", self.cells) if self.swapped else ("face", self.faces)


def channel_layout(grid, swapped=False, bc_outer="infinite-mass"):
    """Unknown placement for one channel.

    The first face (at r_min) is always eliminated. The outer closure
    'infinite-mass' sets a = 0 at r_max: on the ghost centre beyond r_max
    for the usual layout, by dropping face n for the swapped one. 'none'
    sets b = 0 at r_max instead.
    """
    if bc_outer not in ("infinite-mass", "none"):
        raise InvalidArgument(f"bc_outer must be 'infinite-mass' or 'none', got {bc_outer!r}")
    keep_last = (bc_outer == "infinite-mass") != swapped
    last = grid.n if keep_last else grid.n - 1
    return ChannelLayout(np.arange(grid.n), np.arange(1, last + 1), swapped)


def kinetic_entries(grid, lam, eps, layout, robin=0.0):
    """COO entries (cell_pos, face_pos, value) of the cell-to-face block in
    normalised unknowns, plus the Robin diagonal on the first cell.

    With the usual layout the block is ε A with A = r^{-λ/2} ∂ r^{λ/2}. A
    swapped channel has the same structure with (λ, ε) replaced by
    (-λ, -ε). Normalised unknowns are scaled by √(width), which makes the
    discrete operator a real symmetric matrix.
    """
    if layout.swapped:
        lam, eps = -lam, -eps
    faces = grid.faces
    cells = grid.nodes
    dc = grid.cell_widths
    df = np.concatenate([[np.nan], grid.face_widths])  # indexed by face
    c_index = {int(c): k for k, c in enumerate(layout.cells)}
    f_index = {int(j): k for k, j in enumerate(layout.faces)}
    rows, cols, vals = [], [], []
    for i in layout.cells:
        for j, sign in ((i + 1, 1.0), (i, -1.0)):
            if j in f_index:
                v = sign * eps * (faces[j] / cells[i]) ** (0.5 * lam) / math.sqrt(dc[i] * df[j])
                rows.append(c_index[int(i)])
                cols.append(f_index[int(j)])
                vals.append(v)
    diag = None
    if robin != 0.0 and 0 in c_index:
        diag = (c_index[0], -eps * (faces[0] / cells[0]) ** (0.5 * lam) * robin / dc[0])
    return np.array(rows, int), np.array(cols, int), np.array(vals), diag


def interpolation_block(grid, faces_out, cells_in):
    """Normalised linear interpolation from cell centres to faces.

    Entry (face j, cell i) is √(df_j) w_ji / √(dc_i); cells not listed in
    ``cells_in`` (including the ghost beyond r_max) contribute zero.
    """
    faces = grid.faces
    c = np.append(grid.nodes, grid._ghost_centre())
    dc = grid.cell_widths
    df = np.concatenate([[np.nan], grid.face_widths])
    c_index = {int(ci): k for k, ci in enumerate(cells_in)}
    rows, cols, vals = [], [], []
    for k, j in enumerate(faces_out):
        t = (faces[j] - c[j - 1]) / (c[j] - c[j - 1])
        for cell, w in ((j - 1, 1.0 - t), (j, t)):
            if cell in c_index:
                rows.append(k)
                cols.append(c_index[cell])
                vals.append(math.sqrt(df[j]) * w / math.sqrt(dc[cell]))
    shape = (len(faces_out), len(cells_in))
    return sps.csr_matrix((vals, (rows, cols)), shape=shape)


def fiber_matrix(op, grid, bc_outer="infinite-mass", gamma=None):
    """Real symmetric matrix of d^κ in normalised unknowns.

    Unknowns are ordered [upper component, lower component]. ``gamma``
    selects the inner closure of a deficient channel (κ = 0, ω > π/2); it
    defaults to the wall b(r_min) = 0, which is the γ = 1 closure.
    """
    if not isinstance(grid, RadialGrid):
        raise InvalidArgument("fiber_matrix expects a RadialGrid")
    robin, swapped = _inner_closure(op.geometry, op.kappa, gamma, grid)
    layout = channel_layout(grid, swapped, bc_outer)
    rows, cols, vals, diag = kinetic_entries(grid, op.eigenvalue, op.parity, layout, robin)
    nc, nf = len(layout.cells), len(layout.faces)
    block = sps.coo_matrix((vals, (rows, cols)), shape=(nc, nf))
    d = np.zeros(nc)
    if diag is not None:
        d[diag[0]] = diag[1]
    if swapped:
        return sps.bmat([[None, block.T], [block, sps.diags(d)]], format="csr")
    return sps.bmat([[sps.diags(d), block], [block.T, None]], format="csr")


def _inner_closure(geom, kappa, gamma, grid):
    """(Robin ratio, swapped-layout flag) for the inner end of a channel.

    γ = 1 is the wall b = 0 and γ = -1 the wall a = 0 (swapped layout);
    other γ eliminate b(r_min) through the ratio of the generator.
    """
    deficient = classify_self_adjoint(geom, kappa) is Classification.DEFICIENCY_ONE
    if gamma is not None and not isinstance(gamma, ExtensionParameter):
        gamma = ExtensionParameter.from_gamma(gamma)
    if not deficient or gamma is None or gamma.is_plus_one:
        return 0.0, False
    rho = robin_ratio(geom, gamma, grid.faces[0], grid.nodes[0])
    if math.isinf(rho):
        return 0.0, True
    return rho, False


def sample_to_unknowns(grid, a_cells, b_faces):
    """Normalised unknowns from a(r) at the nodes and b(r) at faces 1..n."""
    f = np.sqrt(grid.nodes) * a_cells * np.sqrt(grid.cell_widths)
    g = np.sqrt(grid.faces[1:]) * b_faces * np.sqrt(grid.face_widths)
    return np.concatenate([f, g])
