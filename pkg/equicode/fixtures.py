"""
Worked instances shipped with the toolkit.

The Z_4 instance is the running example: G = ⟨(1 2 3)(4)⟩ acting on a
16-word code of length 4. The ternary instance is a 9-word self-dual code
over F_3 that is not invariant under its involution, kept as a counterexample.
"""

import logging
from typing import Callable, Dict, List, Tuple

from .enumerators import JacobiSet, h_weight_enum, weight_enum
from .frobring import RingZk
from .gcode import Code, code_span, format_word, h_dual, is_g_code, project_theta, verify_hayden, verify_orbit_matrix
from .lattice import construction_a, verify_glattice_correspondence
from .macwilliams import FLAVORS, check_identity
from .models import Report
from .permgrp import HaydenOperator, PermGroup, hayden, orbit_length_matrix, parse_group
from .theta import jacobi_formula_check, verify_jacobi_correspondence, verify_theta_correspondence

logger = logging.getLogger(__name__)

Z4_GENERATORS = ((1, 1, 1, 3), (1, 3, 1, 1), (0, 0, 2, 2))
Z4_PROJECTION = ["0000", "1113", "2222", "3331"]
Z4_H_DUAL = ["0000", "1111", "2222", "3333"]
Z4_ORBIT_MATRIX = "diag(3,3,3,1)"
Z4_H_WEIGHT_ENUM = "x^2 + 3*y^2"
Z4_WEIGHT_ENUM = "x^4 + 6*x^2*y^2 + 9*y^4"

Z4_SPEC = {
    "modulus": 4,
    "length": 4,
    "generators": [list(g) for g in Z4_GENERATORS],
    "group": ["(1 2 3)(4)"],
}

TERNARY_WORDS = ("0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210")


def z4_example() -> Tuple[Code, PermGroup, HaydenOperator]:
    """The Z_4 code spanned by 1113, 1311, 0022 with G = ⟨(1 2 3)⟩."""
    ring = RingZk(k=4)
    group = parse_group(4, ["(1 2 3)(4)"])
    code = code_span(ring, 4, Z4_GENERATORS)
    return code, group, hayden(ring, group)


def ternary_example() -> Tuple[Code, PermGroup, HaydenOperator]:
    """The 9-word F_3 code with G = ⟨(1 2)(3 4)⟩."""
    ring = RingZk(k=3)
    group = parse_group(4, ["(1 2)(3 4)"])
    code = Code.from_words(ring, 4, [tuple(int(ch) for ch in w) for w in TERNARY_WORDS])
    return code, group, hayden(ring, group)


def _value_report(flavor: str, actual, expected) -> Report:
    passed = actual == expected
    if not passed:
        logger.warning(f"{flavor}: got {actual}, expected {expected}")
    return Report(
        flavor=flavor,
        passed=passed,
        lhs=actual,
        rhs=expected,
        witness=None if passed else {"got": actual, "expected": expected},
    )


def run_z4_example() -> List[Report]:
    """Every stated value of the Z_4 instance plus each identity check on it."""
    code, group, op = z4_example()
    k = code.ring.k
    projected = project_theta(code, op)
    dual_h = h_dual(projected)
    lattice = construction_a(code)

    reports = [
        _value_report("z4-projection", [format_word(w, k) for w in projected.expanded()], Z4_PROJECTION),
        _value_report("z4-h-dual", [format_word(w, k) for w in dual_h.expanded()], Z4_H_DUAL),
        _value_report("z4-orbit-matrix", orbit_length_matrix(op.partition).describe(), Z4_ORBIT_MATRIX),
        _value_report("z4-h-weight-enumerator", h_weight_enum(projected).to_text(), Z4_H_WEIGHT_ENUM),
        _value_report("z4-weight-enumerator", weight_enum(code).to_text(), Z4_WEIGHT_ENUM),
        _value_report("z4-construction-a", str(lattice.gram_determinant()), "1"),
        verify_hayden(code, op),
        verify_orbit_matrix(code, op),
    ]
    for flavor in FLAVORS:
        reports.append(check_identity(flavor, code, op, cross_validate=True))
    reports.append(verify_glattice_correspondence(code, group, op))
    reports.append(verify_theta_correspondence(code, op, genus=1))
    reports.append(verify_theta_correspondence(code, op, genus=2))
    for places in [(), (1,), (1, 2)]:
        reports.append(verify_jacobi_correspondence(code, op, JacobiSet(t=projected.t, places=places), cutoff=4))
    reports.append(jacobi_formula_check(lattice, 1j))
    return reports


def run_ternary_example() -> List[Report]:
    """The ternary instance is not a G-code, so both structural identities must fail on it.

    The MacWilliams checks compare Cθ_H with its true H-dual and hold for any code.
    """
    code, group, op = ternary_example()
    projected = project_theta(code, op)
    reports = [
        _value_report("ternary-projection-size", projected.size, 9),
        _value_report("ternary-h-dual-size", h_dual(projected).size, 1),
        _value_report("ternary-is-g-code", is_g_code(code, group), False),
        _value_report("ternary-hayden-fails", verify_hayden(code, op).passed, False),
        _value_report("ternary-orbit-matrix-fails", verify_orbit_matrix(code, op).passed, False),
    ]
    reports += [check_identity(flavor, code, op) for flavor in FLAVORS]
    return reports


EXAMPLES: Dict[str, Callable[[], List[Report]]] = {
    "z4": run_z4_example,
    "ternary": run_ternary_example,
}
