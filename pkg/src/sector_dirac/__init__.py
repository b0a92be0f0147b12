"""Dirac operators with infinite-mass boundary conditions on planar sectors.

Submodules
----------
spinor      Pauli algebra, boundary matrices, charge conjugation, rotations.
angular     Angular operator K, its eigenmodes and the σ3 mode coupling.
bessel      K_ν for real order with asymptotic and recurrence checks.
fiber       Radial fiber operators, deficiency elements, discretisation.
spectra     Massive sector assembly, eigen-solves and diagnostics.
extensions  Criteria selecting the distinguished self-adjoint extension.
geometry    Polygon corners and their classification.
cli, io     Command-line driver and report formats.
"""

from ._backend import BACKEND
from .angular import (
    AngularMode,
    SectorGeometry,
    apply_K,
    coupling_matrix,
    lambda_kappa,
    mode_function,
    sigma3_coupling,
)
from .bessel import bessel_k, bessel_k_asym_small, bessel_k_recurrence_residual
from .extensions import (
    audit_extension,
    charge_conj_admissible,
    distinguished_extension,
    h_half_membership,
    scaled_gamma,
)
from .fiber import (
    Classification,
    ExtensionParameter,
    FiberOperator,
    RadialGrid,
    classify_self_adjoint,
    deficiency_element,
    extension_generator,
    fiber_matrix,
    sector_extension_pair,
)
from .geometry import (
    PolygonDomain,
    classify_polygon,
    corner_half_apertures,
    edge_boundary_matrix,
)
from .spectra import (
    SpectralReport,
    assemble_sector,
    count_in_window,
    eigen_solve,
    radial_reality_check,
    square_identity_residual,
    virial_check,
    weyl_quotient_negative_mass,
    weyl_quotient_positive_mass,
)
from .spinor import (
    bc_eigenvector,
    boundary_matrix,
    charge_conjugate,
    pauli_dot,
    rotate_field,
)

__version__ = "0.1.0"
