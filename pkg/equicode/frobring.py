"""
The base ring R₀ = Z_k (F_p when k is prime) with its generating character.

χ(a) = ζ_k^a. The ring is commutative, so left and right notions coincide
everywhere downstream.
"""

import logging
from typing import List

from pydantic import BaseModel, ConfigDict, Field
from sympy import isprime

from .errors import NotInvertible
from .exactmath import Cyclotomic, cyclo_reduce, egcd_inverse

logger = logging.getLogger(__name__)


class RingZk(BaseModel):
    """Z_k; `is_field` only affects labels."""

    k: int = Field(ge=2, description="Modulus, |R₀| = k")

    model_config = ConfigDict(frozen=True)

    @property
    def is_field(self) -> bool:
        return bool(isprime(self.k))

    @property
    def label(self) -> str:
        return f"F_{self.k}" if self.is_field else f"Z_{self.k}"

    def elements(self) -> List[int]:
        return list(range(self.k))

    def reduce(self, a: int) -> int:
        return a % self.k


def char_value(ring: RingZk, a: int) -> Cyclotomic:
    """χ(a) = ζ_k^a."""
    return Cyclotomic.zeta_power(ring.k, ring.reduce(a))


def char_sum(ring: RingZk, a: int) -> Cyclotomic:
    """Σ_{b∈R} χ(ab), reduced; equals k when a = 0 and 0 otherwise."""
    total = Cyclotomic.integer(ring.k, 0)
    for b in ring.elements():
        total = total + char_value(ring, a * b)
    return cyclo_reduce(total)


def inverse(ring: RingZk, m: int) -> int:
    """m^{-1} mod k; raises NotInvertible when gcd(m, k) > 1."""
    inv = egcd_inverse(m, ring.k)
    if inv is None:
        raise NotInvertible(f"{m} is not a unit in {ring.label}")
    return inv
