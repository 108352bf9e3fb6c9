#!/usr/bin/env python3
"""
Example script walking through the equicode toolkit on the Z_4 instance.

G = ⟨(1 2 3)(4)⟩ acts on the 16-word code spanned by 1113, 1311 and 0022.
"""

from equicode import (
    FLAVORS,
    check_identity,
    construction_a,
    h_dual,
    h_weight_enum,
    jacobi_formula_check,
    orbit_construction_a,
    project_theta,
    theta_lattice,
    verify_hayden,
    verify_orbit_matrix,
    weight_enum,
    z4_example,
)
from equicode.gcode import format_word
from equicode.permgrp import orbit_length_matrix


def main():
    """Demonstrate the projection, the MacWilliams checks and the lattice side."""
    print("equicode - Z_4 walkthrough")
    print("=" * 40)

    code, group, op = z4_example()
    k = code.ring.k
    print(f"\nCode: {code.size} words of length {code.n} over {code.ring.label}")
    print(f"Group order: {group.order}")
    print(f"Orbits: {op.partition.describe()}")
    print(f"Orbit-length matrix: {orbit_length_matrix(op.partition).describe()}")

    projected = project_theta(code, op)
    print("\nProjection Cθ_H:")
    print("  " + ", ".join(format_word(w, k) for w in projected.expanded()))
    print("H-dual of Cθ_H:")
    print("  " + ", ".join(format_word(w, k) for w in h_dual(projected).expanded()))

    print(f"\nW_C = {weight_enum(code).to_text()}")
    print(f"W^H = {h_weight_enum(projected).to_text()}")

    print("\nStructural identities:")
    for report in (verify_hayden(code, op), verify_orbit_matrix(code, op)):
        print_report(report)

    print("\nMacWilliams identities:")
    for flavor in FLAVORS:
        print_report(check_identity(flavor, code, op, cross_validate=True))

    lattice = construction_a(code)
    print("\nConstruction A:")
    print(f"  det(Gram) = {lattice.gram_determinant()}, even = {lattice.is_even()}")
    print_report(jacobi_formula_check(lattice, 1j))

    print("\nTheta series of the orbit lattice (exponent: coefficient):")
    series = theta_lattice(orbit_construction_a(projected), 4)
    for line in series.to_text().splitlines():
        print(f"  {line}")


def print_report(report):
    status = "PASS" if report.passed else "FAIL"
    print(f"  [{status}] {report.flavor}")


if __name__ == "__main__":
    main()
