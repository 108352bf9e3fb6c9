"""
Polynomial containers for weight enumerators.

BivarPoly is a homogeneous polynomial Σ c_i x^{d-i} y^i with integer or
rational coefficients. MultiPoly is a sparse polynomial in a variable family
x_a (a ∈ R^g), optionally paired with a second family y_a (a ∈ R), whose
coefficients may be int, Fraction or Cyclotomic. Coefficients are promoted
when needed and only demoted through an explicit integrality check.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import DimensionMismatch, NonIntegerCoefficient, NotDivisible
from .exactmath import Cyclotomic

logger = logging.getLogger(__name__)

Coeff = Union[int, Fraction, Cyclotomic]
LinearForm = Tuple[Coeff, Coeff]
Exponent = Tuple[int, ...]


def _normalize(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _is_zero(c: Coeff) -> bool:
    if isinstance(c, Cyclotomic):
        return c.is_zero()
    return c == 0


def coeff_text(c: Coeff) -> str:
    if isinstance(c, Cyclotomic):
        return f"({c})"
    return str(c)


def _join_terms(terms: List[Tuple[Coeff, str]]) -> str:
    """Render (coefficient, monomial) pairs as "a*m + b*m2 - ..."."""
    if not terms:
        return "0"
    parts = []
    for idx, (c, mono) in enumerate(terms):
        negative = not isinstance(c, Cyclotomic) and c < 0
        magnitude = -c if negative else c
        if mono and not isinstance(magnitude, Cyclotomic) and magnitude == 1:
            body = mono
        elif mono:
            body = f"{coeff_text(magnitude)}*{mono}"
        else:
            body = coeff_text(magnitude)
        if idx == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


class BivarPoly:
    """Homogeneous Σ_i coeffs[i]·x^{d-i} y^i."""

    __slots__ = ("_degree", "_coeffs")

    def __init__(self, degree: int, coeffs: Mapping[int, Union[int, Fraction]]) -> None:
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for i, c in coeffs.items():
            if not 0 <= i <= degree:
                raise ValueError(f"term y^{i} exceeds degree {degree}")
            c = _normalize(Fraction(c) if not isinstance(c, int) else c)
            if c != 0:
                clean[int(i)] = c
        self._degree = degree
        self._coeffs = clean

    @classmethod
    def zero(cls, degree: int) -> BivarPoly:
        return cls(degree, {})

    @classmethod
    def linear(cls, a: Union[int, Fraction], b: Union[int, Fraction]) -> BivarPoly:
        """a·x + b·y."""
        return cls(1, {0: a, 1: b})

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def coeffs(self) -> Dict[int, Union[int, Fraction]]:
        return dict(self._coeffs)

    def coefficient(self, i: int) -> Union[int, Fraction]:
        return self._coeffs.get(i, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._coeffs.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self._degree == other.degree and self._coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.is_zero():
            return hash(0)
        return hash((self._degree, tuple(sorted(self._coeffs.items()))))

    def __add__(self, other: BivarPoly) -> BivarPoly:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self._degree != other.degree:
            raise DimensionMismatch(f"adding degree {self._degree} and {other.degree}")
        out = dict(self._coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return BivarPoly(self._degree, out)

    def __neg__(self) -> BivarPoly:
        return self.scale(-1)

    def __sub__(self, other: BivarPoly) -> BivarPoly:
        return self + (-other)

    def __mul__(self, other: Union[BivarPoly, int, Fraction]) -> BivarPoly:
        if not isinstance(other, BivarPoly):
            return self.scale(other)
        out: Dict[int, Union[int, Fraction]] = {}
        for i, a in self._coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return BivarPoly(self._degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BivarPoly:
        result = BivarPoly(0, {0: 1})
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c: Union[int, Fraction]) -> BivarPoly:
        return BivarPoly(self._degree, {i: a * c for i, a in self._coeffs.items()})

    def evaluate(self, x, y):
        return sum(c * x ** (self._degree - i) * y ** i for i, c in self._coeffs.items())

    def divide_by_xy_power(self, d: int) -> BivarPoly:
        """Z with self = (xy)^d · Z; NotDivisible when some term lacks the factor."""
        if d == 0:
            return self
        if self.is_zero():
            return BivarPoly.zero(max(self._degree - 2 * d, 0))
        if self._degree < 2 * d:
            raise NotDivisible(f"degree {self._degree} polynomial cannot contain (xy)^{d}")
        out = {}
        for i, c in self._coeffs.items():
            if i < d or self._degree - i < d:
                raise NotDivisible(f"term x^{self._degree - i}*y^{i} is not divisible by (xy)^{d}")
            out[i - d] = c
        return BivarPoly(self._degree - 2 * d, out)

    def to_text(self) -> str:
        terms = []
        for i in sorted(self._coeffs):
            xe, ye = self._degree - i, i
            mono = []
            if xe:
                mono.append("x" if xe == 1 else f"x^{xe}")
            if ye:
                mono.append("y" if ye == 1 else f"y^{ye}")
            terms.append((self._coeffs[i], "*".join(mono)))
        return _join_terms(terms)

    def to_json(self) -> dict:
        return {"degree": self._degree, "coeffs": {str(i): str(c) for i, c in sorted(self._coeffs.items())}}

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BivarPoly({self._degree}, {self._coeffs!r})"


def poly_substitute_bivar(p: BivarPoly, x_expr: LinearForm, y_expr: LinearForm) -> BivarPoly:
    """p(a·x + b·y, c·x + e·y) for x_expr = (a, b), y_expr = (c, e)."""
    x_image = BivarPoly.linear(*x_expr)
    y_image = BivarPoly.linear(*y_expr)
    result = BivarPoly.zero(p.degree)
    for i, c in p.coeffs.items():
        result = result + (x_image ** (p.degree - i) * y_image ** i).scale(c)
    return result


class VariableFamily(BaseModel):
    """Variables x_a for a ∈ Z_k^genus, and y_a for a ∈ Z_k when paired.

    Tuples a are ordered lexicographically; x-exponents come first in every
    exponent vector, then the y-exponents.
    """

    k: int = Field(ge=2)
    genus: int = Field(default=1, ge=1)
    paired: bool = False

    model_config = ConfigDict(frozen=True)

    @property
    def x_count(self) -> int:
        return self.k ** self.genus

    @property
    def arity(self) -> int:
        return self.x_count + (self.k if self.paired else 0)

    def index(self, a: Sequence[int]) -> int:
        idx = 0
        for x in a:
            idx = idx * self.k + (x % self.k)
        return idx

    def labels(self) -> List[Tuple[int, ...]]:
        return list(product(range(self.k), repeat=self.genus))

    def name(self, position: int) -> str:
        if position >= self.x_count:
            return f"y{position - self.x_count}"
        label = self.labels()[position]
        if self.genus == 1:
            return f"x{label[0]}"
        return "x(" + ",".join(str(v) for v in label) + ")"


class MultiPoly:
    """Sparse Σ coeff·∏ var^exponent over a VariableFamily."""

    __slots__ = ("_family", "_terms")

    def __init__(self, family: VariableFamily, terms: Mapping[Exponent, Coeff]) -> None:
        clean: Dict[Exponent, Coeff] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != family.arity:
                raise DimensionMismatch(f"exponent arity {len(exp)} vs family arity {family.arity}")
            c = _normalize(c)
            if not _is_zero(c):
                clean[exp] = c
        self._family = family
        self._terms = clean

    @classmethod
    def zero(cls, family: VariableFamily) -> MultiPoly:
        return cls(family, {})

    @classmethod
    def one(cls, family: VariableFamily) -> MultiPoly:
        return cls(family, {(0,) * family.arity: 1})

    @classmethod
    def variable(cls, family: VariableFamily, position: int, coeff: Coeff = 1) -> MultiPoly:
        exp = [0] * family.arity
        exp[position] = 1
        return cls(family, {tuple(exp): coeff})

    @property
    def family(self) -> VariableFamily:
        return self._family

    @property
    def terms(self) -> Dict[Exponent, Coeff]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exp: Exponent) -> Coeff:
        return self._terms.get(tuple(exp), 0)

    def _check_family(self, other: MultiPoly) -> None:
        if self._family != other.family:
            raise DimensionMismatch("polynomials over different variable families")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check_family(other)
        out = dict(self._terms)
        for exp, c in other.terms.items():
            out[exp] = out[exp] + c if exp in out else c
        return MultiPoly(self._family, out)

    def __neg__(self) -> MultiPoly:
        return self.scale(-1)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: Union[MultiPoly, int, Fraction, Cyclotomic]) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_family(other)
        out: Dict[Exponent, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = _mul_coeff(c1, c2)
                out[exp] = out[exp] + prod if exp in out else prod
        return MultiPoly(self._family, out)

    def __pow__(self, e: int) -> MultiPoly:
        result = MultiPoly.one(self._family)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Coeff) -> MultiPoly:
        return MultiPoly(self._family, {exp: _mul_coeff(a, c) for exp, a in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self._family != other.family:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self._family, len(self._terms)))

    def total_degrees(self) -> set:
        return {sum(exp) for exp in self._terms}

    def evaluate_ones(self) -> Coeff:
        """Sum of coefficients (every variable set to 1)."""
        total: Coeff = 0
        for c in self._terms.values():
            total = total + c
        return total

    def as_integral(self) -> MultiPoly:
        """The same polynomial with int coefficients; NonIntegerCoefficient otherwise."""
        out = {}
        for exp, c in self._terms.items():
            value = _integer_value(c)
            if value is None:
                raise NonIntegerCoefficient(f"coefficient {coeff_text(c)} is not an integer")
            out[exp] = value
        return MultiPoly(self._family, out)

    def collapse_pairs(self) -> MultiPoly:
        """Set y_a ← x_a in a paired genus-1 family."""
        if not self._family.paired or self._family.genus != 1:
            raise DimensionMismatch("collapse_pairs needs a paired genus-1 family")
        plain = VariableFamily(k=self._family.k)
        k = self._family.k
        out: Dict[Exponent, Coeff] = {}
        for exp, c in self._terms.items():
            merged = tuple(exp[a] + exp[k + a] for a in range(k))
            out[merged] = out[merged] + c if merged in out else c
        return MultiPoly(plain, out)

    def sorted_terms(self) -> List[Tuple[Exponent, Coeff]]:
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def monomial_text(self, exp: Exponent) -> str:
        parts = []
        for pos, e in enumerate(exp):
            if e:
                name = self._family.name(pos)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        return _join_terms([(c, self.monomial_text(exp)) for exp, c in self.sorted_terms()])

    def to_json(self) -> dict:
        return {
            "family": self._family.model_dump(),
            "terms": {",".join(str(e) for e in exp): coeff_text(c) for exp, c in self.sorted_terms()},
        }

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"


def _mul_coeff(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, Cyclotomic) and isinstance(b, Fraction):
        return _scale_cyclotomic(a, b)
    if isinstance(b, Cyclotomic) and isinstance(a, Fraction):
        return _scale_cyclotomic(b, a)
    return a * b


def _scale_cyclotomic(c: Cyclotomic, f: Fraction) -> Cyclotomic:
    if f.denominator != 1:
        raise NonIntegerCoefficient("cyclotomic coefficients are kept in Z[ζ_k]")
    return c * int(f.numerator)


def _integer_value(c: Coeff) -> Optional[int]:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c.numerator) if c.denominator == 1 else None
    return c.to_integer()


def integer_value(c: Coeff) -> Optional[int]:
    return _integer_value(c)


def poly_substitute_multi(p: MultiPoly, images: Sequence[Mapping[int, Coeff]],
                          target: Optional[VariableFamily] = None) -> MultiPoly:
    """Replace variable i by the linear form Σ_j images[i][j]·var_j."""
    family = target or p.family
    if len(images) != p.family.arity:
        raise DimensionMismatch(f"{len(images)} images for {p.family.arity} variables")
    forms = [
        sum((MultiPoly.variable(family, j, c) for j, c in form.items()), MultiPoly.zero(family))
        for form in images
    ]
    powers: Dict[Tuple[int, int], MultiPoly] = {}

    def power(var: int, e: int) -> MultiPoly:
        key = (var, e)
        if key not in powers:
            powers[key] = forms[var] ** e
        return powers[key]

    result = MultiPoly.zero(family)
    for exp, c in p.terms.items():
        term = MultiPoly.one(family).scale(c)
        for var, e in enumerate(exp):
            if e:
                term = term * power(var, e)
        result = result + term
    logger.debug(f"substituted {len(p.terms)} terms into {len(result.terms)} terms")
    return result


def specialize_cwe(p: MultiPoly) -> BivarPoly:
    """x_0 ← x, every other x_a ← y."""
    if p.family.genus != 1 or p.family.paired:
        raise DimensionMismatch("specialize_cwe needs an unpaired genus-1 family")
    degrees = p.total_degrees()
    if len(degrees) > 1:
        raise DimensionMismatch("polynomial is not homogeneous")
    degree = degrees.pop() if degrees else 0
    out: Dict[int, Union[int, Fraction]] = {}
    for exp, c in p.terms.items():
        value = _integer_value(c)
        if value is None:
            if isinstance(c, Fraction):
                value = c
            else:
                raise NonIntegerCoefficient(f"cannot specialize coefficient {coeff_text(c)}")
        i = degree - exp[0]
        out[i] = out.get(i, 0) + value
    return BivarPoly(degree, out)
