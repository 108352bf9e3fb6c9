"""
Weight enumerators of codes in orbit coordinates.

Every enumerator is computed from an OrbitCode; with the trivial partition
these are the classical Hamming, complete, genus-g, harmonic and Jacobi
enumerators.
"""

import logging
from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import guard_enumeration
from .errors import DimensionMismatch
from .gcode import Code, OrbitCode, h_weight
from .harmonic import HarmonicFn, f_tilde
from .polyring import BivarPoly, MultiPoly, VariableFamily

logger = logging.getLogger(__name__)


class JacobiSet(BaseModel):
    """A set T of 1-based orbit places; E = {1..t}."""

    t: int = Field(ge=0)
    places: Tuple[int, ...] = ()

    model_config = ConfigDict(frozen=True)

    @field_validator("places")
    @classmethod
    def sorted_unique(cls, v):
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def places_in_range(self):
        bad = [p for p in self.places if not 1 <= p <= self.t]
        if bad:
            raise ValueError(f"places {bad} outside 1..{self.t}")
        return self

    def complement(self) -> Tuple[int, ...]:
        chosen = set(self.places)
        return tuple(p for p in range(1, self.t + 1) if p not in chosen)


def weight_enum(c: Code) -> BivarPoly:
    """Σ_u x^{n-wt(u)} y^{wt(u)}."""
    counts = Counter(h_weight(w) for w in c.codewords)
    return BivarPoly(c.n, dict(counts))


def h_weight_enum(d: OrbitCode) -> BivarPoly:
    """W^H_D = Σ_u x^{t-wt_H(u)} y^{wt_H(u)}."""
    counts = Counter(h_weight(u) for u in d.words)
    return BivarPoly(d.t, dict(counts))


def _composition(columns, family: VariableFamily) -> Tuple[int, ...]:
    exp = [0] * family.arity
    for col in columns:
        exp[family.index(col)] += 1
    return tuple(exp)


def cwe_h(d: OrbitCode) -> MultiPoly:
    """Σ_u ∏_a x_a^{n_a^H(u)}."""
    return cwe_g(d, 1)


def cwe_g(d: OrbitCode, g: int, max_enum: Optional[int] = None) -> MultiPoly:
    """Genus-g complete enumerator: x_a counts columns (u_1,i, …, u_g,i) = a."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    guard_enumeration(d.size ** g, f"genus-{g} enumerator", max_enum)
    family = VariableFamily(k=d.ring.k, genus=g)
    terms: Dict[Tuple[int, ...], int] = {}
    for stack in product(d.words, repeat=g):
        exp = _composition(zip(*stack), family)
        terms[exp] = terms.get(exp, 0) + 1
    return MultiPoly(family, terms)


def harmonic_weight_enum(d: OrbitCode, f: HarmonicFn) -> BivarPoly:
    """Σ_u f̃(u) x^{t-wt_H(u)} y^{wt_H(u)}, exact rationals."""
    if f.t != d.t:
        raise DimensionMismatch(f"harmonic function on {f.t} places, code has {d.t} orbits")
    coeffs: Dict[int, Fraction] = {}
    for u in d.words:
        value = f_tilde(f, u, d.ring)
        if value:
            w = h_weight(u)
            coeffs[w] = coeffs.get(w, Fraction(0)) + value
    return BivarPoly(d.t, coeffs)


def jacobi_poly(d: OrbitCode, T: JacobiSet) -> MultiPoly:
    """∏_a x_a^{n_{a,T}(u)} y_a^{n_{a,E∖T}(u)} summed over D."""
    if T.t != d.t:
        raise DimensionMismatch(f"Jacobi set over {T.t} places, code has {d.t} orbits")
    k = d.ring.k
    family = VariableFamily(k=k, paired=True)
    inside = [p - 1 for p in T.places]
    outside = [p - 1 for p in T.complement()]
    terms: Dict[Tuple[int, ...], int] = {}
    for u in d.words:
        exp = [0] * family.arity
        for i in inside:
            exp[u[i]] += 1
        for i in outside:
            exp[k + u[i]] += 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + 1
    return MultiPoly(family, terms)
