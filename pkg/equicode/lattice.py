"""
Lattices with a global 1/√k scale.

A Lattice stores a rational basis B (rows) and an integer k_scale; the true
lattice vectors are x/√k_scale for x in the row lattice of B. Construction A
of a code over Z_k uses k_scale = k and an integral basis.

Covers Construction A (plain and in orbit coordinates), G-lattice tests,
Λ₀ = {v ∈ Λ : vθ_H ∈ Λ}, projections, span duals, exact short-vector
enumeration and the structure checks relating codes and lattices.
"""

import logging
from fractions import Fraction
from math import floor, ceil, isqrt, lcm
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import factorint

from .config import get_config
from .errors import DimensionMismatch, NotDiscrete
from .exactmath import (
    common_denominator,
    hnf,
    rat_determinant,
    rat_hnf,
    rat_inverse,
    rat_matmul,
    rat_nullspace,
    rat_rank,
    rat_transpose,
    rat_vecmat,
    snf_preimage,
    solve_left,
    to_fraction,
)
from .gcode import Code, OrbitCode, is_g_code, project_theta
from .models import Report
from .permgrp import HaydenOperator, OrbitPartition, PermGroup, ker_theta_real_basis

logger = logging.getLogger(__name__)

RatRow = Tuple[Fraction, ...]
RatMatrix = Sequence[Sequence[Fraction]]


def _squarefree_part(n: int) -> int:
    part = 1
    for p, e in factorint(n).items():
        if e % 2:
            part *= p
    return part


class Lattice(BaseModel):
    """Row lattice of `basis`, scaled by 1/√k_scale."""

    n: int = Field(ge=0, description="Ambient dimension")
    k_scale: int = Field(default=1, ge=1)
    basis: Tuple[Tuple[Fraction, ...], ...]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def independent_rows(self):
        if any(len(row) != self.n for row in self.basis):
            raise ValueError(f"basis rows must have length {self.n}")
        if rat_rank(self.basis) != len(self.basis):
            raise ValueError("basis rows are linearly dependent")
        return self

    @classmethod
    def from_generators(cls, rows: Sequence[Sequence], k_scale: int = 1, n: Optional[int] = None) -> "Lattice":
        """Lattice spanned by arbitrary rational generators (Hermite-reduced)."""
        rows = [tuple(to_fraction(x) for x in r) for r in rows]
        dim = n if n is not None else (len(rows[0]) if rows else 0)
        return cls(n=dim, k_scale=k_scale, basis=tuple(rat_hnf(rows)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram_stored(self) -> List[RatRow]:
        """B·Bᵀ of the stored coordinates."""
        return rat_matmul(self.basis, rat_transpose(self.basis)) if self.basis else []

    def gram(self) -> List[RatRow]:
        """True Gram matrix (1/k)·B·Bᵀ."""
        return [tuple(x / self.k_scale for x in row) for row in self.gram_stored()]

    def gram_determinant(self) -> Fraction:
        if not self.basis:
            return Fraction(1)
        return rat_determinant(self.gram())

    def determinant(self) -> float:
        """Covolume |det B|·k^{-r/2} (square root of the Gram determinant)."""
        return float(self.gram_determinant()) ** 0.5

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram() for x in row)

    def is_even(self) -> bool:
        g = self.gram()
        return self.is_integral() and all(g[i][i] % 2 == 0 for i in range(len(g)))

    def coordinates(self, v: Sequence) -> Optional[RatRow]:
        return solve_left(self.basis, [to_fraction(x) for x in v])

    def contains(self, v: Sequence) -> bool:
        """Is the stored vector v (true vector v/√k) in the lattice?"""
        coords = self.coordinates(v)
        return coords is not None and all(x.denominator == 1 for x in coords)

    def canonical_basis(self) -> Tuple[RatRow, ...]:
        return tuple(rat_hnf(self.basis))

    def rescaled(self, k_scale: int) -> "Lattice":
        """Same lattice stored with scale 1/√k_scale; k_scale/self.k_scale must be a square."""
        ratio = Fraction(k_scale, self.k_scale)
        num, den = ratio.numerator, ratio.denominator
        if isqrt(num) ** 2 != num or isqrt(den) ** 2 != den:
            raise ValueError(f"cannot rescale from k={self.k_scale} to k={k_scale} rationally")
        factor = Fraction(isqrt(num), isqrt(den))
        return Lattice(n=self.n, k_scale=k_scale, basis=tuple(tuple(x * factor for x in row) for row in self.basis))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        if self.n != other.n or self.rank != other.rank:
            return False
        if self.k_scale == other.k_scale:
            return self.canonical_basis() == other.canonical_basis()
        s1, s2 = _squarefree_part(self.k_scale), _squarefree_part(other.k_scale)
        if s1 != s2:
            return self.rank == 0
        common = s1 * lcm(isqrt(self.k_scale // s1), isqrt(other.k_scale // s2)) ** 2
        return self.rescaled(common).canonical_basis() == other.rescaled(common).canonical_basis()

    def __hash__(self) -> int:
        return hash((self.n, self.rank))

    def short_vectors(self, bound: Fraction) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        """Coefficient vectors c with true norm ⟨cB, cB⟩ ≤ bound, with that norm."""
        gram = self.gram()
        for coeffs, q in enumerate_short(gram, to_fraction(bound)):
            yield coeffs, q

    def vectors_in_ball(self, bound) -> List[Tuple[RatRow, Fraction]]:
        """Stored vectors of true norm ≤ bound."""
        out = []
        for coeffs, q in self.short_vectors(to_fraction(bound)):
            vec = rat_vecmat(coeffs, self.basis) if self.basis else ()
            out.append((vec, q))
        return out

    def to_json(self) -> dict:
        return {
            "k_scale": self.k_scale,
            "basis": [[str(x) for x in row] for row in self.canonical_basis()],
        }


def enumerate_short(gram: RatMatrix, bound: Fraction) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
    """All integer c with c·G·cᵀ ≤ bound for a positive definite rational G.

    Fincke-Pohst over an exact square-completion of the quadratic form; the
    per-coordinate ranges come from integer square roots, widened by one and
    then filtered exactly.
    """
    r = len(gram)
    if r == 0:
        yield (), Fraction(0)
        return
    q = [[to_fraction(x) for x in row] for row in gram]
    for i in range(r):
        for j in range(i + 1, r):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, r):
            for l in range(k, r):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(r)]
    if any(d <= 0 for d in diag):
        raise ValueError("Gram matrix is not positive definite")
    x = [0] * r

    def radius(remaining: Fraction, d: Fraction) -> int:
        ratio = remaining / d
        p, s = ratio.numerator, ratio.denominator
        return isqrt(p * s) // s + 1

    def descend(i: int, remaining: Fraction) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        center = -sum((q[i][j] * x[j] for j in range(i + 1, r)), Fraction(0))
        w = radius(remaining, diag[i])
        for value in range(floor(center) - w, ceil(center) + w + 1):
            used = diag[i] * (value - center) ** 2
            if used > remaining:
                continue
            x[i] = value
            rest = remaining - used
            if i == 0:
                yield tuple(x), bound - rest
            else:
                yield from descend(i - 1, rest)
        x[i] = 0

    yield from descend(r - 1, bound)


def integer_lattice(n: int) -> Lattice:
    """Z^n."""
    return Lattice(n=n, k_scale=1, basis=tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    ))


def from_basis(rows: Sequence[Sequence], k_scale: int = 1) -> Lattice:
    rows = [tuple(to_fraction(x) for x in r) for r in rows]
    return Lattice(n=len(rows[0]) if rows else 0, k_scale=k_scale, basis=tuple(rows))


def _construction_a_rows(k: int, length: int, generators: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    rows = [tuple(int(x) for x in g) for g in generators]
    rows += [tuple(k if i == j else 0 for j in range(length)) for i in range(length)]
    return hnf(rows)


def construction_a(c: Code) -> Lattice:
    """Λ(C) = (1/√k){x ∈ Z^n : x mod k ∈ C}."""
    basis = _construction_a_rows(c.ring.k, c.n, c.generators)
    return Lattice(n=c.n, k_scale=c.ring.k, basis=tuple(tuple(Fraction(x) for x in row) for row in basis))


def construction_a_member(c: Code, x: Sequence[int]) -> bool:
    """ρ(x) ∈ C for an integer vector x."""
    return tuple(int(v) % c.ring.k for v in x) in c


def orbit_construction_a(d: OrbitCode) -> Lattice:
    """Construction A of Cθ_H inside the t-dimensional orbit-coordinate space."""
    basis = _construction_a_rows(d.ring.k, d.t, d.generators)
    return Lattice(n=d.t, k_scale=d.ring.k, basis=tuple(tuple(Fraction(x) for x in row) for row in basis))


def permute_vector(perm, v: Sequence) -> RatRow:
    return tuple(perm.apply(tuple(v)))


def is_g_lattice(l: Lattice, g: PermGroup) -> bool:
    """Every generator maps every basis row back into the lattice."""
    if g.n != l.n:
        raise DimensionMismatch(f"group degree {g.n} vs lattice dimension {l.n}")
    return all(l.contains(permute_vector(perm, row)) for perm in g.generators for row in l.basis)


def lambda0(l: Lattice, theta: RatMatrix) -> Lattice:
    """Λ₀ = {v ∈ Λ : vθ_H ∈ Λ} via the coefficient condition x·(BθB^{-1}) ∈ Z^n."""
    if l.rank != l.n:
        raise DimensionMismatch("Λ₀ needs a full-rank lattice")
    b = [list(row) for row in l.basis]
    m = rat_matmul(rat_matmul(b, theta), rat_inverse(b))
    coeffs = snf_preimage(m)
    rows = rat_matmul(coeffs, b)
    return Lattice(n=l.n, k_scale=l.k_scale, basis=tuple(rat_hnf(rows)))


def project_lattice(l: Lattice, theta: RatMatrix) -> Lattice:
    """The lattice spanned by {row·θ_H}; its rank must equal rank θ_H."""
    images = rat_matmul(l.basis, theta) if l.basis else []
    d = common_denominator(x for row in images for x in row)
    ints = [tuple(int(x * d) for x in row) for row in images]
    basis = [tuple(Fraction(x, d) for x in row) for row in hnf(ints)]
    expected = rat_rank(theta)
    if len(basis) != expected:
        raise NotDiscrete(f"projected lattice has rank {len(basis)}, expected {expected}")
    return Lattice(n=l.n, k_scale=l.k_scale, basis=tuple(basis))


def dual_lattice(l: Lattice) -> Lattice:
    """Dual within the row span: stored basis k·(BBᵀ)^{-1}B."""
    if not l.basis:
        return l
    inv = rat_inverse(l.gram_stored())
    rows = [tuple(x * l.k_scale for x in row) for row in rat_matmul(inv, l.basis)]
    return Lattice(n=l.n, k_scale=l.k_scale, basis=tuple(rat_hnf(rows)))


def _same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    ra, rb = rat_rank(a), rat_rank(b)
    return ra == rb and rat_rank(list(a) + list(b)) == ra


def verify_lattice_hayden(l: Lattice, theta: RatMatrix, p: OrbitPartition) -> Report:
    """(Λ₀θ_H)* = ker θ_H ⊕ Λ₀*θ_H, checked as span-dual equality plus complement span."""
    l0 = lambda0(l, theta)
    image = project_lattice(l0, theta)
    lhs = dual_lattice(image)
    rhs = project_lattice(dual_lattice(l0), theta)
    lattice_ok = lhs == rhs
    complement = rat_nullspace(image.basis) if image.basis else [
        tuple(Fraction(1 if i == j else 0) for j in range(l.n)) for i in range(l.n)
    ]
    kernel = ker_theta_real_basis(p)
    complement_ok = (not complement and not kernel) or _same_span(complement, kernel)
    passed = lattice_ok and complement_ok
    if not passed:
        logger.warning(f"lattice Hayden check failed: lattice={lattice_ok} complement={complement_ok}")
    return Report(
        flavor="lattice-hayden",
        passed=passed,
        lhs=lhs.to_json(),
        rhs=rhs.to_json(),
        witness=None if passed else {"span_dual_equal": lattice_ok, "complement_equal": complement_ok},
        details={
            "lambda0_index": isqrt(int(l0.gram_determinant() / l.gram_determinant())),
            "rank": image.rank,
            "kernel_dimension": len(kernel),
        },
    )


def _orbit_coordinates(v: Sequence[Fraction], p: OrbitPartition) -> RatRow:
    return tuple(v[orbit[0] - 1] for orbit in p.orbits)


def verify_glattice_correspondence(c: Code, g: PermGroup, op: Optional[HaydenOperator] = None,
                                   radius: Optional[int] = None) -> Report:
    """C is a G-code iff Λ(C) is a G-lattice; Λ₀(C)θ_H against orbit Construction A of Cθ_H."""
    gcode_flag = is_g_code(c, g)
    glattice_flag = is_g_lattice(construction_a(c), g)
    details = {"is_g_code": gcode_flag, "is_g_lattice": glattice_flag}
    passed = gcode_flag == glattice_flag
    witness = None if passed else {"is_g_code": gcode_flag, "is_g_lattice": glattice_flag}

    if op is not None and gcode_flag:
        bound = Fraction(radius if radius is not None else get_config().theta.ball_radius)
        theta = op.matrix_real
        image = project_lattice(lambda0(construction_a(c), theta), theta)
        orbit_lattice = orbit_construction_a(project_theta(c, op))
        widest = max(op.partition.lengths)
        from_image = set()
        for vec, _norm in image.vectors_in_ball(bound * widest):
            u = _orbit_coordinates(vec, op.partition)
            if sum((x * x for x in u), Fraction(0)) / image.k_scale <= bound:
                from_image.add(u)
        from_orbit = {vec for vec, _norm in orbit_lattice.vectors_in_ball(bound)}
        ball_ok = from_image == from_orbit
        details.update({"ball_radius": str(bound), "ball_size": len(from_orbit), "ball_equal": ball_ok})
        if not ball_ok:
            extra = sorted(from_image ^ from_orbit)[:1]
            witness = {"ball_mismatch": [str(x) for x in extra[0]]} if extra else witness
            logger.warning("Λ₀(C)θ_H and the orbit Construction A lattice differ on the norm ball")
        passed = passed and ball_ok

    return Report(
        flavor="glattice",
        passed=passed,
        lhs=gcode_flag,
        rhs=glattice_flag,
        witness=witness,
        details=details,
    )
