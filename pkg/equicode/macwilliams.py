"""
MacWilliams transforms and the drivers that check them.

Each check projects C to D = Cθ_H, takes the H-dual D' = ^⊥_H(D), which by
the orbit-length identity equals (^⊥Cθ_H)M_H, and compares the enumerator of
D' with the transform of D's enumerator. Equality is exact: coefficients
live in Z, Q or Z[ζ_k].
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional

from .enumerators import JacobiSet, cwe_g, cwe_h, h_weight_enum, jacobi_poly
from .errors import DimensionMismatch, NonIntegerResult
from .exactmath import Cyclotomic
from .frobring import RingZk
from .gcode import Code, dual, h_dual, project_theta, scale_by_M
from .harmonic import HarmonicFn, harm_basis, z_poly
from .models import Report
from .permgrp import HaydenOperator, orbit_length_matrix
from .polyring import BivarPoly, MultiPoly, integer_value, poly_substitute_bivar, poly_substitute_multi

logger = logging.getLogger(__name__)

FLAVORS = ("hamming", "cwe", "cwe_g", "harmonic", "jacobi")


def _integral_quotient(p: MultiPoly, divisor: int) -> MultiPoly:
    out = {}
    for exp, c in p.terms.items():
        value = integer_value(c)
        if value is None or value % divisor:
            raise NonIntegerResult(
                f"coefficient {c} of {p.monomial_text(exp)} is not an integer multiple of {divisor}"
            )
        out[exp] = value // divisor
    return MultiPoly(p.family, out)


def _character_images(k: int, genus: int) -> List[Dict[int, Cyclotomic]]:
    """x_a ↦ Σ_{b ∈ R^g} χ(a·b) x_b for each a in lexicographic order."""
    labels = list(product(range(k), repeat=genus))
    images = []
    for a in labels:
        images.append({
            j: Cyclotomic.zeta_power(k, sum(x * y for x, y in zip(a, b)))
            for j, b in enumerate(labels)
        })
    return images


def mw_hamming(p: BivarPoly, ring: RingZk, size: int) -> BivarPoly:
    """(1/size)·p(x + (k-1)y, x - y)."""
    transformed = poly_substitute_bivar(p, (1, ring.k - 1), (1, -1)).scale(Fraction(1, size))
    if not transformed.is_integral():
        raise NonIntegerResult(f"transform {transformed} has non-integer coefficients")
    return transformed


def mw_cwe(p: MultiPoly, ring: RingZk, size: int) -> MultiPoly:
    """(1/size)·p(Σ_b χ(ab) x_b)."""
    if p.family.genus != 1 or p.family.paired:
        raise DimensionMismatch("mw_cwe needs an unpaired genus-1 family")
    return mw_cwe_g(p, ring, 1, size)


def mw_cwe_g(p: MultiPoly, ring: RingZk, g: int, size: int) -> MultiPoly:
    """(1/size^g)·p(Σ_{b∈R^g} χ(Σ a_i b_i) x_b)."""
    if p.family.genus != g or p.family.paired or p.family.k != ring.k:
        raise DimensionMismatch(f"polynomial family does not match genus {g} over {ring.label}")
    substituted = poly_substitute_multi(p, _character_images(ring.k, g))
    return _integral_quotient(substituted, size ** g)


def mw_harmonic(z: BivarPoly, ring: RingZk, d: int, size: int) -> BivarPoly:
    """(-1)^d (k^d/size)·Z(x + (k-1)y, x - y)."""
    factor = Fraction((-1) ** d * ring.k ** d, size)
    return poly_substitute_bivar(z, (1, ring.k - 1), (1, -1)).scale(factor)


def mw_jacobi(p: MultiPoly, ring: RingZk, size: int) -> MultiPoly:
    """Both families transformed by Σ_b χ(ab)·, then divided by size."""
    if not p.family.paired or p.family.k != ring.k:
        raise DimensionMismatch("mw_jacobi needs a paired family over the same ring")
    k = ring.k
    x_images = _character_images(k, 1)
    y_images = [{k + j: c for j, c in image.items()} for image in x_images]
    substituted = poly_substitute_multi(p, x_images + y_images)
    return _integral_quotient(substituted, size)


def default_harmonic(t: int, degree: int = 1) -> HarmonicFn:
    """First basis element of Harm_degree(t), falling back to lower degrees."""
    for d in range(min(degree, t), -1, -1):
        basis = harm_basis(t, d)
        if basis:
            return basis[0]
    return harm_basis(t, 0)[0]


def _poly_witness(lhs, rhs) -> Optional[dict]:
    if lhs == rhs:
        return None
    try:
        diff = lhs - rhs
    except DimensionMismatch:
        return {"lhs": lhs.to_text(), "rhs": rhs.to_text()}
    if isinstance(diff, BivarPoly):
        i = min(diff.coeffs)
        return {"monomial_y_power": i, "difference": str(diff.coeffs[i])}
    exp, c = diff.sorted_terms()[0]
    return {"monomial": diff.monomial_text(exp), "difference": str(c)}


def check_identity(
    flavor: str,
    c: Code,
    op: HaydenOperator,
    *,
    genus: int = 2,
    harmonic: Optional[HarmonicFn] = None,
    harmonic_degree: int = 1,
    jacobi_set: Optional[JacobiSet] = None,
    cross_validate: bool = False,
    max_enum: Optional[int] = None,
) -> Report:
    """Compare transform(enumerator of Cθ_H) with the enumerator of ^⊥_H(Cθ_H)."""
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    ring = c.ring
    d = project_theta(c, op)
    d_dual = h_dual(d, max_enum)
    details: Dict[str, object] = {"size": d.size, "dual_size": d_dual.size, "orbits": d.t}

    if cross_validate:
        via_dual = scale_by_M(project_theta(dual(c, max_enum), op), orbit_length_matrix(op.partition))
        agrees = via_dual.word_set == d_dual.word_set
        details["cross_validation"] = agrees
        if not agrees:
            logger.warning("(^⊥C)θ_H M_H differs from the H-dual of Cθ_H")

    if flavor == "hamming":
        lhs = mw_hamming(h_weight_enum(d), ring, d.size)
        rhs = h_weight_enum(d_dual)
    elif flavor == "cwe":
        lhs = mw_cwe(cwe_h(d), ring, d.size)
        rhs = cwe_h(d_dual)
    elif flavor == "cwe_g":
        lhs = mw_cwe_g(cwe_g(d, genus, max_enum), ring, genus, d.size)
        rhs = cwe_g(d_dual, genus, max_enum)
        details["genus"] = genus
    elif flavor == "harmonic":
        f = harmonic if harmonic is not None else default_harmonic(d.t, harmonic_degree)
        lhs = mw_harmonic(z_poly(d, f), ring, f.d, d.size)
        rhs = z_poly(d_dual, f)
        details["harmonic"] = f.to_json()
    else:
        T = jacobi_set if jacobi_set is not None else JacobiSet(t=d.t, places=(1,) if d.t else ())
        lhs = mw_jacobi(jacobi_poly(d, T), ring, d.size)
        rhs = jacobi_poly(d_dual, T)
        details["jacobi_set"] = list(T.places)

    passed = lhs == rhs and details.get("cross_validation", True)
    witness = _poly_witness(lhs, rhs)
    if witness is None and not passed:
        witness = {"cross_validation": False}
    if not passed:
        logger.warning(f"{flavor} MacWilliams identity failed: {lhs} vs {rhs}")
    else:
        logger.debug(f"{flavor} MacWilliams identity holds: {rhs}")
    return Report(
        flavor=flavor,
        passed=passed,
        lhs=lhs.to_text(),
        rhs=rhs.to_text(),
        witness=witness,
        details=details,
    )
