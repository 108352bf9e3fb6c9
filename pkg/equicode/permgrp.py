"""
Permutation groups acting on coordinate positions.

A permutation g sends position i to i·g (1-based). It acts on words by
x_i = v_{i g^{-1}}, i.e. the entry at position i moves to position i·g.
Products apply left to right: i·(gh) = (i·g)·h.

The Hayden operator θ_H = |H|^{-1} Σ_{h∈H} h is kept in two forms: a matrix
over Z_k and the rational orthogonal projection onto orbit-constant vectors.
"""

import logging
import re
from collections import deque
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import get_config, guard_enumeration
from .errors import GroupTooLarge
from .frobring import RingZk, inverse

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation(BaseModel):
    """images[i-1] = i·g for positions 1..n."""

    images: Tuple[int, ...] = Field(description="1-based image of each position")

    model_config = ConfigDict(frozen=True)

    @field_validator("images")
    @classmethod
    def is_bijection(cls, v):
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{v} is not a permutation of 1..{len(v)}")
        return v

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(images=tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as "(1 2 3)(4)"; fixed points may be omitted."""
        images = list(range(1, n + 1))
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped:
            raise ValueError(f"unexpected text {stripped!r} in cycle notation {text!r}")
        seen = set()
        for body in _CYCLE_RE.findall(text):
            points = [int(p) for p in re.split(r"[\s,]+", body.strip()) if p]
            for p in points:
                if not 1 <= p <= n:
                    raise ValueError(f"point {p} outside 1..{n} in {text!r}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in {text!r}")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a - 1] = b
        return cls(images=tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self then other."""
        return Permutation(images=tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(images=tuple(inv))

    def apply(self, v: Sequence) -> tuple:
        """vg: the entry at position i moves to position i·g."""
        if len(v) != self.n:
            raise ValueError(f"word of length {len(v)} acted on by degree-{self.n} permutation")
        out = [None] * self.n
        for i, image in enumerate(self.images):
            out[image - 1] = v[i]
        return tuple(out)

    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def cycle_string(self) -> str:
        seen = set()
        parts = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                parts.append("(" + " ".join(str(p) for p in cycle) + ")")
        return "".join(parts) or "()"


class PermGroup(BaseModel):
    """A finite group of coordinate permutations, fully enumerated."""

    n: int = Field(ge=1)
    generators: Tuple[Permutation, ...] = ()
    elements: Tuple[Permutation, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def contains_identity(self):
        if Permutation.identity(self.n) not in self.elements:
            raise ValueError("group elements must contain the identity")
        return self

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1


class OrbitPartition(BaseModel):
    """Orbits H_V(α_1), …, H_V(α_t) of the coordinates.

    `orbits` holds 1-based positions, orbits ordered by their least element.
    `orbit_of[j]` is the 0-based orbit index of 0-based coordinate j.
    """

    n: int
    orbits: Tuple[Tuple[int, ...], ...]
    orbit_of: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def is_partition(self):
        points = sorted(p for orbit in self.orbits for p in orbit)
        if points != list(range(1, self.n + 1)):
            raise ValueError("orbits must partition 1..n")
        if list(self.orbits) != sorted(self.orbits, key=min):
            raise ValueError("orbits must be ordered by least element")
        return self

    @classmethod
    def from_orbits(cls, n: int, orbits: Sequence[Sequence[int]]) -> "OrbitPartition":
        ordered = sorted((tuple(sorted(o)) for o in orbits), key=min)
        orbit_of = [0] * n
        for idx, orbit in enumerate(ordered):
            for p in orbit:
                orbit_of[p - 1] = idx
        return cls(n=n, orbits=tuple(ordered), orbit_of=tuple(orbit_of))

    @classmethod
    def trivial(cls, n: int) -> "OrbitPartition":
        return cls.from_orbits(n, [(p,) for p in range(1, n + 1)])

    @property
    def t(self) -> int:
        return len(self.orbits)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def describe(self) -> str:
        return "{" + ", ".join("{" + ",".join(str(p) for p in o) + "}" for o in self.orbits) + "}"


class OrbitLengthMatrix(BaseModel):
    """M_H = diag(ℓ_1..ℓ_n), ℓ_j the length of the orbit containing j."""

    diagonal: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    def describe(self) -> str:
        return "diag(" + ",".join(str(x) for x in self.diagonal) + ")"


class HaydenOperator(BaseModel):
    """θ_H for a subgroup H acting on R^n, with gcd(|H|, k) = 1."""

    ring: RingZk
    group: PermGroup
    partition: OrbitPartition
    inv_h: int
    matrix_mod: Tuple[Tuple[int, ...], ...]
    matrix_real: Tuple[Tuple[Fraction, ...], ...]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n(self) -> int:
        return self.group.n

    def apply(self, v: Sequence[int]) -> Word:
        """vθ_H over Z_k."""
        k = self.ring.k
        n = self.n
        return tuple(
            sum(v[i] * self.matrix_mod[i][j] for i in range(n)) % k for j in range(n)
        )

    def apply_real(self, v: Sequence) -> Tuple[Fraction, ...]:
        n = self.n
        return tuple(
            sum((Fraction(v[i]) * self.matrix_real[i][j] for i in range(n)), Fraction(0))
            for j in range(n)
        )


def group_closure(n: int, gens: Sequence[Permutation], max_order: Optional[int] = None) -> PermGroup:
    """Enumerate ⟨gens⟩; elements sorted lexicographically by image tuple."""
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g.cycle_string()} has degree {g.n}, expected {n}")
    bound = max_order if max_order is not None else get_config().limits.max_group_order
    identity = Permutation.identity(n)
    seen = {identity.images: identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = current.compose(g)
            if nxt.images not in seen:
                seen[nxt.images] = nxt
                if len(seen) > bound:
                    raise GroupTooLarge(f"group order exceeds {bound}")
                queue.append(nxt)
    elements = tuple(seen[key] for key in sorted(seen))
    logger.debug(f"closure of {len(gens)} generators on {n} points: order {len(elements)}")
    return PermGroup(n=n, generators=tuple(gens), elements=elements)


def parse_group(n: int, cycles: Sequence[str], max_order: Optional[int] = None) -> PermGroup:
    return group_closure(n, [Permutation.parse(c, n) for c in cycles], max_order)


def orbits(g: PermGroup) -> OrbitPartition:
    """Coordinate orbits by union-find over the generators."""
    parent = list(range(g.n + 1))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in g.generators:
        for i in range(1, g.n + 1):
            a, b = find(i), find(perm(i))
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: Dict[int, List[int]] = {}
    for i in range(1, g.n + 1):
        groups.setdefault(find(i), []).append(i)
    return OrbitPartition.from_orbits(g.n, list(groups.values()))


def projection_matrix(p: OrbitPartition) -> Tuple[Tuple[Fraction, ...], ...]:
    """The rational θ_H: entry (i, j) is 1/m when i, j share an orbit of length m."""
    lengths = p.lengths
    return tuple(
        tuple(
            Fraction(1, lengths[p.orbit_of[i]]) if p.orbit_of[i] == p.orbit_of[j] else Fraction(0)
            for j in range(p.n)
        )
        for i in range(p.n)
    )


def hayden(ring: RingZk, h: PermGroup) -> HaydenOperator:
    """Build θ_H = |H|^{-1} Σ_h h; NotInvertible when gcd(|H|, k) > 1."""
    order = h.order
    inv_h = inverse(ring, order)
    n = h.n
    counts = [[0] * n for _ in range(n)]
    for elem in h.elements:
        for i, image in enumerate(elem.images):
            counts[i][image - 1] += 1
    matrix_mod = tuple(tuple((inv_h * c) % ring.k for c in row) for row in counts)
    matrix_real = tuple(tuple(Fraction(c, order) for c in row) for row in counts)
    logger.debug(f"θ_H over {ring.label}: |H|={order}, |H|^-1={inv_h}")
    return HaydenOperator(
        ring=ring,
        group=h,
        partition=orbits(h),
        inv_h=inv_h,
        matrix_mod=matrix_mod,
        matrix_real=matrix_real,
    )


def orbit_length_matrix(p: OrbitPartition) -> OrbitLengthMatrix:
    lengths = p.lengths
    return OrbitLengthMatrix(diagonal=tuple(lengths[p.orbit_of[j]] for j in range(p.n)))


def ker_theta_mod(ring: RingZk, op: HaydenOperator, max_enum: Optional[int] = None) -> List[Word]:
    """All v ∈ R^n with vθ_H = 0, by enumeration."""
    n = op.n
    guard_enumeration(ring.k ** n, "ker θ_H", max_enum)
    zero = (0,) * n
    return [v for v in product(range(ring.k), repeat=n) if op.apply(v) == zero]


def ker_theta_real_basis(p: OrbitPartition) -> List[Tuple[Fraction, ...]]:
    """Rows e_i - e_j for consecutive points i < j of each orbit."""
    rows = []
    for orbit in p.orbits:
        for a, b in zip(orbit, orbit[1:]):
            row = [Fraction(0)] * p.n
            row[a - 1] = Fraction(1)
            row[b - 1] = Fraction(-1)
            rows.append(tuple(row))
    return rows
