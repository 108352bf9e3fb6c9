"""
equicode - equivariant coding theory over Z_k.

Codes carrying a permutation-group action, their Hayden-operator
projections, weight enumerators with exact MacWilliams transforms, and the
Construction-A lattices and theta series attached to them.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatch,
    EquicodeError,
    GroupTooLarge,
    InvalidCutoff,
    NonIntegerCoefficient,
    NonIntegerResult,
    NotConverged,
    NotDiscrete,
    NotDivisible,
    NotInvertible,
    NotMember,
    NotOrbitConstant,
    SpecError,
    TooLarge,
)
from .exactmath import Cyclotomic, hnf, snf_preimage
from .frobring import RingZk, char_sum, char_value, inverse
from .permgrp import (
    HaydenOperator,
    OrbitLengthMatrix,
    OrbitPartition,
    Permutation,
    PermGroup,
    group_closure,
    hayden,
    ker_theta_mod,
    orbit_length_matrix,
    orbits,
    parse_group,
)
from .gcode import (
    Code,
    OrbitCode,
    code_span,
    dual,
    g_code_span,
    h_dual,
    h_inner,
    h_weight,
    is_g_code,
    orbit_form,
    project_theta,
    scale_by_M,
    verify_hayden,
    verify_orbit_matrix,
)
from .polyring import BivarPoly, MultiPoly, VariableFamily
from .harmonic import HarmonicFn, f_tilde, f_tilde_bruteforce, harm_basis, z_poly
from .enumerators import JacobiSet, cwe_g, cwe_h, h_weight_enum, harmonic_weight_enum, jacobi_poly, weight_enum
from .macwilliams import FLAVORS, check_identity, mw_cwe, mw_cwe_g, mw_hamming, mw_harmonic, mw_jacobi
from .lattice import (
    Lattice,
    construction_a,
    dual_lattice,
    is_g_lattice,
    lambda0,
    orbit_construction_a,
    project_lattice,
    verify_glattice_correspondence,
    verify_lattice_hayden,
)
from .theta import (
    JacobiQSeries,
    QSeries,
    QSeries2,
    jacobi_formula_check,
    jacobi_theta_lattice,
    phi_a,
    substitute_series,
    theta_fa,
    theta_lattice,
    verify_jacobi_correspondence,
    verify_theta_correspondence,
)
from .models import ProblemSpec, Report, SweepSummary
from .fixtures import run_ternary_example, run_z4_example, ternary_example, z4_example

__all__ = [
    # Errors
    "EquicodeError",
    "NotInvertible",
    "TooLarge",
    "GroupTooLarge",
    "NotOrbitConstant",
    "DimensionMismatch",
    "NotDivisible",
    "NonIntegerResult",
    "NonIntegerCoefficient",
    "NotDiscrete",
    "NotMember",
    "NotConverged",
    "SpecError",
    "InvalidCutoff",

    # Rings, groups and codes
    "Cyclotomic",
    "hnf",
    "snf_preimage",
    "RingZk",
    "char_value",
    "char_sum",
    "inverse",
    "Permutation",
    "PermGroup",
    "OrbitPartition",
    "OrbitLengthMatrix",
    "HaydenOperator",
    "group_closure",
    "parse_group",
    "orbits",
    "hayden",
    "orbit_length_matrix",
    "ker_theta_mod",
    "Code",
    "OrbitCode",
    "code_span",
    "g_code_span",
    "is_g_code",
    "dual",
    "orbit_form",
    "project_theta",
    "h_weight",
    "h_inner",
    "h_dual",
    "scale_by_M",
    "verify_hayden",
    "verify_orbit_matrix",

    # Enumerators and MacWilliams
    "BivarPoly",
    "MultiPoly",
    "VariableFamily",
    "HarmonicFn",
    "harm_basis",
    "f_tilde",
    "f_tilde_bruteforce",
    "z_poly",
    "JacobiSet",
    "weight_enum",
    "h_weight_enum",
    "cwe_h",
    "cwe_g",
    "harmonic_weight_enum",
    "jacobi_poly",
    "mw_hamming",
    "mw_cwe",
    "mw_cwe_g",
    "mw_harmonic",
    "mw_jacobi",
    "FLAVORS",
    "check_identity",

    # Lattices and theta series
    "Lattice",
    "construction_a",
    "orbit_construction_a",
    "is_g_lattice",
    "lambda0",
    "project_lattice",
    "dual_lattice",
    "verify_lattice_hayden",
    "verify_glattice_correspondence",
    "QSeries",
    "QSeries2",
    "JacobiQSeries",
    "theta_lattice",
    "theta_fa",
    "phi_a",
    "substitute_series",
    "jacobi_theta_lattice",
    "verify_theta_correspondence",
    "verify_jacobi_correspondence",
    "jacobi_formula_check",

    # Records and fixtures
    "Report",
    "ProblemSpec",
    "SweepSummary",
    "z4_example",
    "run_z4_example",
    "ternary_example",
    "run_ternary_example",
]
