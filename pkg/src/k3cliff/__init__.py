"""Exact-arithmetic toolkit for curves on K3 surfaces.

Integer Picard-lattice arithmetic, Clifford-index searches over divisor
classes, extended-lattice (Mukai) pairings with dual-lattice computation,
Koszul-complex cohomology over exact rationals, and Brill-Noether
numerology, all exposed through one CLI with a deterministic `verify`
regression driver.
"""

from .bn import (
    BundleNumerics,
    GammaResult,
    LMNumerics,
    MercatVerdict,
    gamma,
    generic_cliff,
    lm_numerics,
    mercat_compare,
    minimal_degree,
    rho,
)
from .clifford import (
    FamilyError,
    GLCandidate,
    SearchBounds,
    SearchReport,
    SurfaceFamily,
    custom_family,
    f_quadratic,
    family_feasibility,
    feasible_prop33,
    feasible_thm41,
    gonality,
    min_clifford,
    prop33_family,
    thm41_family,
)
from .koszul import (
    GradedRingData,
    KoszulError,
    MissingDegreeError,
    SyzygyTensor,
    differential,
    is_cocycle,
    koszul_dim,
    projective_ring_data,
    syzygy_rank_bound,
    tensor_boundary,
    wedge_basis,
    zeta_tensor,
)
from .lattice import (
    DivisorClass,
    LatticeError,
    PicardLattice,
    canonical_sign,
    classes_with_square,
    minus_two_classes,
    pair,
    square,
    square_zero_classes,
)
from .mukai import (
    DistinguishedClass,
    ExtendedLattice,
    FMDualResult,
    MukaiVector,
    fm_dual,
    mukai_pair,
    nl_member,
    represented_values,
    weakly_isometric,
)
from .verify import VerifyPlan, VerifyReport, emit, run_verify

__version__ = "0.1.0"
