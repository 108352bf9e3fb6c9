"""
Discrete harmonic functions on d-subsets of the orbit places [t].

Harm_d(t) is the kernel of the differentiation γ, which sends a function on
d-subsets to the function on (d-1)-subsets y ↦ Σ_{z ⊃ y} f(z). Everything
stays in exact rationals.
"""

import json
import logging
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import DimensionMismatch, NotDivisible
from .exactmath import rat_nullspace, to_fraction, to_sympy
from .frobring import RingZk
from .polyring import BivarPoly

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


def subsets(t: int, d: int) -> List[Subset]:
    """d-subsets of 1..t in lexicographic order."""
    return list(combinations(range(1, t + 1), d))


def gamma(values: Mapping[Subset, Fraction], t: int, d: int) -> Dict[Subset, Fraction]:
    """(γf)(y) = Σ_{z ⊃ y, |z| = d} f(z) for every (d-1)-subset y."""
    if d < 1:
        raise ValueError("γ is defined for d ≥ 1")
    out = {y: Fraction(0) for y in subsets(t, d - 1)}
    for z, value in values.items():
        for y in combinations(z, d - 1):
            out[y] += to_fraction(value)
    return out


class HarmonicFn(BaseModel):
    """An element of Harm_d(t); keys are sorted 1-based d-subsets."""

    t: int = Field(ge=0)
    d: int = Field(ge=0)
    values: Dict[Tuple[int, ...], Fraction]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("values", mode="before")
    @classmethod
    def parse_values(cls, v):
        parsed = {}
        for key, value in dict(v).items():
            if isinstance(key, str):
                key = json.loads(key)
            parsed[tuple(sorted(int(p) for p in key))] = to_fraction(value)
        return parsed

    @model_validator(mode="after")
    def is_harmonic(self):
        if self.d > self.t:
            raise ValueError(f"degree {self.d} exceeds {self.t} places")
        allowed = set(subsets(self.t, self.d))
        for key in self.values:
            if key not in allowed:
                raise ValueError(f"{list(key)} is not a {self.d}-subset of 1..{self.t}")
        if self.d >= 1 and any(gamma(self.values, self.t, self.d).values()):
            raise ValueError("function is not harmonic: γ(f) ≠ 0")
        return self

    def value(self, z: Subset) -> Fraction:
        return self.values.get(tuple(z), Fraction(0))

    @classmethod
    def from_json(cls, data: Mapping) -> "HarmonicFn":
        """{"t": 2, "d": 1, "values": {"[1]": "1", "[2]": "-1"}}"""
        return cls(t=data["t"], d=data["d"], values=data.get("values", {}))

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "values": {json.dumps(list(z)): str(v) for z, v in sorted(self.values.items()) if v},
        }


def harm_basis(t: int, d: int) -> List[HarmonicFn]:
    """Exact basis of ker γ on functions of d-subsets of [t]."""
    if not 0 <= d <= t:
        raise ValueError(f"need 0 ≤ d ≤ t, got d={d}, t={t}")
    if d == 0:
        return [HarmonicFn(t=t, d=0, values={(): Fraction(1)})]
    columns = subsets(t, d)
    rows = subsets(t, d - 1)
    incidence = [[1 if set(y) <= set(z) else 0 for z in columns] for y in rows]
    rank = to_sympy(incidence).rank()
    kernel = rat_nullspace(incidence)
    expected = comb(t, d) - rank
    if len(kernel) != expected:
        raise ArithmeticError(f"kernel dimension {len(kernel)} differs from {expected}")
    logger.debug(f"Harm_{d}({t}) has dimension {expected}")
    return [
        HarmonicFn(t=t, d=d, values={z: v for z, v in zip(columns, vec) if v})
        for vec in kernel
    ]


def _support(u: Sequence[int]) -> Subset:
    return tuple(i for i, x in enumerate(u, start=1) if x)


def f_tilde(f: HarmonicFn, u: Sequence[int], ring: RingZk) -> Fraction:
    """(k-1)^d · Σ_{z ⊆ supp_H(u), |z| = d} f(z)."""
    if len(u) != f.t:
        raise DimensionMismatch(f"orbit word of length {len(u)} for a function on {f.t} places")
    total = sum((f.value(z) for z in combinations(_support(u), f.d)), Fraction(0))
    return total * (ring.k - 1) ** f.d


def f_tilde_bruteforce(f: HarmonicFn, u: Sequence[int], ring: RingZk) -> Fraction:
    """Σ f(supp v) over all v ∈ Z_k^t of weight d with supp v ⊆ supp u."""
    if len(u) != f.t:
        raise DimensionMismatch(f"orbit word of length {len(u)} for a function on {f.t} places")
    allowed = set(_support(u))
    total = Fraction(0)
    for v in product(range(ring.k), repeat=f.t):
        support = _support(v)
        if len(support) == f.d and allowed.issuperset(support):
            total += f.value(support)
    return total


def z_poly(code, f: HarmonicFn) -> BivarPoly:
    """Z with W^H_{D,f} = (xy)^d·Z, homogeneous of degree t - 2d."""
    from .enumerators import harmonic_weight_enum

    w = harmonic_weight_enum(code, f)
    try:
        return w.divide_by_xy_power(f.d)
    except NotDivisible:
        logger.error(f"harmonic enumerator {w} is not divisible by (xy)^{f.d}")
        raise
