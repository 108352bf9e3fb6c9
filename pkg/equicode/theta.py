"""
Truncated q-expansions of lattice theta series.

Exponents are stored as integer numerators over a shared denominator `den`,
so series built for Construction-A lattices over Z_k live on den = k and
never touch floating point. The only numeric code here is the Jacobi
transformation check, which sums both sides with mpmath.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mp, mpf

from .config import JacobiFormulaSettings, get_config
from .enumerators import JacobiSet, cwe_g, jacobi_poly
from .errors import InvalidCutoff, NonIntegerCoefficient, NotConverged, NotMember
from .exactmath import common_denominator, rat_inverse, to_fraction
from .frobring import RingZk
from .gcode import Code, project_theta
from .lattice import Lattice, enumerate_short, orbit_construction_a
from .models import Report
from .permgrp import HaydenOperator
from .polyring import MultiPoly, integer_value

logger = logging.getLogger(__name__)

Exponent = Union[int, Fraction, str]


def _numerator(cutoff: Exponent, den: int) -> int:
    """Largest m with m/den ≤ cutoff."""
    bound = to_fraction(cutoff)
    if bound < 0:
        raise InvalidCutoff(f"series cutoff must be non-negative, got {cutoff}")
    value = bound * den
    return math.floor(value)


class _Series:
    """Shared truncation and bookkeeping for the three series shapes.

    Subclasses define how keys add, rescale and which part of a key the
    cutoff applies to.
    """

    __slots__ = ("_den", "_terms", "_cutoff")

    def __init__(self, den: int, terms: Mapping, cutoff: int) -> None:
        if den < 1:
            raise ValueError("series denominator must be positive")
        self._den = int(den)
        self._cutoff = int(cutoff)
        clean = {}
        for key, c in terms.items():
            key = self._normalize_key(key)
            if c and self._norm(key) <= self._cutoff:
                clean[key] = int(c)
        self._terms = clean

    @staticmethod
    def _normalize_key(key):
        return key

    @staticmethod
    def _norm(key) -> int:
        raise NotImplementedError

    @staticmethod
    def _add_keys(a, b):
        raise NotImplementedError

    @staticmethod
    def _scale_key(key, factor: int):
        raise NotImplementedError

    @staticmethod
    def _key_text(key, den: int) -> str:
        raise NotImplementedError

    @classmethod
    def _zero_key(cls):
        raise NotImplementedError

    @property
    def den(self) -> int:
        return self._den

    @property
    def cutoff(self) -> int:
        return self._cutoff

    @property
    def terms(self) -> Dict:
        return dict(self._terms)

    @property
    def cutoff_exponent(self) -> Fraction:
        return Fraction(self._cutoff, self._den)

    def coefficient(self, key) -> int:
        return self._terms.get(self._normalize_key(key), 0)

    @classmethod
    def zero(cls, den: int, cutoff: int):
        return cls(den, {}, cutoff)

    @classmethod
    def one(cls, den: int, cutoff: int):
        return cls(den, {cls._zero_key(): 1}, cutoff)

    def rescaled(self, den: int):
        """The same series over a multiple of the current denominator."""
        if den % self._den:
            raise ValueError(f"cannot rescale denominator {self._den} to {den}")
        factor = den // self._den
        return type(self)(den, {self._scale_key(k, factor): c for k, c in self._terms.items()},
                          self._cutoff * factor)

    def _aligned(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        den = math.lcm(self._den, other.den)
        return self.rescaled(den), other.rescaled(den)

    def __add__(self, other):
        a, b = self._aligned(other)
        terms = dict(a._terms)
        for key, c in b._terms.items():
            terms[key] = terms.get(key, 0) + c
        return type(self)(a.den, terms, min(a.cutoff, b.cutoff))

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)(self._den, {k: c * other for k, c in self._terms.items()}, self._cutoff)
        a, b = self._aligned(other)
        cutoff = min(a.cutoff, b.cutoff)
        terms: Dict = {}
        for k1, c1 in a._terms.items():
            if self._norm(k1) > cutoff:
                continue
            for k2, c2 in b._terms.items():
                key = self._add_keys(k1, k2)
                if self._norm(key) <= cutoff:
                    terms[key] = terms.get(key, 0) + c1 * c2
        return type(self)(a.den, terms, cutoff)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.one(self._den, self._cutoff)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def truncated(self, cutoff: int):
        return type(self)(self._den, self._terms, min(cutoff, self._cutoff))

    def difference(self, other) -> Optional[Tuple[Hashable, int, int]]:
        """First key (in sorted order) where the series disagree up to the shared cutoff."""
        a, b = self._aligned(other)
        cutoff = min(a.cutoff, b.cutoff)
        a, b = a.truncated(cutoff), b.truncated(cutoff)
        for key in sorted(set(a._terms) | set(b._terms)):
            if a.coefficient(key) != b.coefficient(key):
                return key, a.coefficient(key), b.coefficient(key)
        return None

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.difference(other) is None

    def __hash__(self) -> int:
        return hash((type(self).__name__, len(self._terms)))

    def to_text(self) -> str:
        """One "exponent: coeff" line per term, ascending."""
        if not self._terms:
            return "0"
        return "\n".join(f"{self._key_text(k, self._den)}: {c}" for k, c in sorted(self._terms.items()))

    def to_json(self) -> dict:
        return {
            "den": self._den,
            "cutoff": self._cutoff,
            "terms": {self._key_text(k, self._den): c for k, c in sorted(self._terms.items())},
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}(den={self._den}, cutoff={self._cutoff}, terms={len(self._terms)})"


class QSeries(_Series):
    """Σ c_m q^{m/den} for m ≤ cutoff."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key) -> int:
        return int(key)

    @staticmethod
    def _norm(key: int) -> int:
        return key

    @staticmethod
    def _add_keys(a: int, b: int) -> int:
        return a + b

    @staticmethod
    def _scale_key(key: int, factor: int) -> int:
        return key * factor

    @staticmethod
    def _key_text(key: int, den: int) -> str:
        return f"{key}/{den}"

    @classmethod
    def _zero_key(cls) -> int:
        return 0

    def coefficient_at(self, exponent: Exponent) -> int:
        """Coefficient of q^exponent; zero when exponent·den is not an integer."""
        value = to_fraction(exponent) * self._den
        if value.denominator != 1:
            return 0
        return self._terms.get(int(value), 0)


class QSeries2(_Series):
    """Genus-2 series keyed by (m11, m12, m22) with exponent πi tr(τA).

    m11 = den·A11, m12 = den·2A12, m22 = den·A22; the cutoff bounds m11 + m22.
    """

    __slots__ = ()

    @staticmethod
    def _normalize_key(key) -> Tuple[int, int, int]:
        return tuple(int(x) for x in key)

    @staticmethod
    def _norm(key) -> int:
        return key[0] + key[2]

    @staticmethod
    def _add_keys(a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])

    @staticmethod
    def _scale_key(key, factor: int):
        return tuple(x * factor for x in key)

    @staticmethod
    def _key_text(key, den: int) -> str:
        return "(" + ",".join(str(x) for x in key) + f")/{den}"

    @classmethod
    def _zero_key(cls):
        return (0, 0, 0)

    def slot_zeroed(self) -> QSeries:
        """Drop the τ12 dependence (sum over m12) and read m11 + m22 as one exponent."""
        terms: Dict[int, int] = {}
        for (m11, _m12, m22), c in self._terms.items():
            terms[m11 + m22] = terms.get(m11 + m22, 0) + c
        return QSeries(self._den, terms, self._cutoff)


class JacobiQSeries(_Series):
    """Σ c q^{n/den} ζ^{i/den}; the cutoff bounds n."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key) -> Tuple[int, int]:
        return (int(key[0]), int(key[1]))

    @staticmethod
    def _norm(key) -> int:
        return key[0]

    @staticmethod
    def _add_keys(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _scale_key(key, factor: int):
        return (key[0] * factor, key[1] * factor)

    @staticmethod
    def _key_text(key, den: int) -> str:
        return f"{key[0]}/{den} {key[1]}/{den}"

    @classmethod
    def _zero_key(cls):
        return (0, 0)

    def at_zeta_one(self) -> QSeries:
        """Set ζ = 1, collapsing the index."""
        terms: Dict[int, int] = {}
        for (n, _i), c in self._terms.items():
            terms[n] = terms.get(n, 0) + c
        return QSeries(self._den, terms, self._cutoff)


# Lattice series ---------------------------------------------------------


def series_denominator(l: Lattice) -> int:
    """k·L with L clearing the stored Gram diagonal and doubled off-diagonal entries."""
    g = l.gram_stored()
    values = [g[i][i] for i in range(len(g))]
    values += [2 * g[i][j] for i in range(len(g)) for j in range(i + 1, len(g))]
    return l.k_scale * common_denominator(values)


def _norm_numerator(norm: Fraction, den: int) -> int:
    value = norm * den
    if value.denominator != 1:
        raise ArithmeticError(f"norm {norm} is not a multiple of 1/{den}")
    return int(value)


def theta_lattice(l: Lattice, cutoff: Exponent) -> QSeries:
    """Σ_{x ∈ Λ, ⟨x,x⟩ ≤ cutoff} q^{⟨x,x⟩}."""
    den = series_denominator(l)
    top = _numerator(cutoff, den)
    terms: Dict[int, int] = {}
    for _coeffs, norm in l.short_vectors(Fraction(top, den)):
        m = _norm_numerator(norm, den)
        terms[m] = terms.get(m, 0) + 1
    logger.debug(f"theta series of a rank-{l.rank} lattice: {sum(terms.values())} vectors up to {top}/{den}")
    return QSeries(den, terms, top)


def _inner(c1: Sequence[int], c2: Sequence[int], gram: Sequence[Sequence[Fraction]]) -> Fraction:
    return sum(
        (gram[i][j] * c1[i] * c2[j] for i in range(len(c1)) for j in range(len(c2)) if c1[i] and c2[j]),
        Fraction(0),
    )


def theta_lattice_genus2(l: Lattice, cutoff: Exponent) -> QSeries2:
    """Σ over pairs (x1, x2) ∈ Λ² with ⟨x1,x1⟩ + ⟨x2,x2⟩ ≤ cutoff of exp πi tr(τ Gram(x1, x2))."""
    den = series_denominator(l)
    top = _numerator(cutoff, den)
    gram = l.gram()
    ball = [(c, _norm_numerator(q, den)) for c, q in l.short_vectors(Fraction(top, den))]
    terms: Dict[Tuple[int, int, int], int] = {}
    for c1, m11 in ball:
        for c2, m22 in ball:
            if m11 + m22 > top:
                continue
            m12 = _norm_numerator(2 * _inner(c1, c2, gram), den)
            key = (m11, m12, m22)
            terms[key] = terms.get(key, 0) + 1
    return QSeries2(den, terms, top)


def jacobi_theta_lattice(l: Lattice, y: Sequence, cutoff: Exponent) -> JacobiQSeries:
    """Σ_x q^{⟨x,x⟩} ζ^{⟨x,y⟩} over the norm ball; y is a stored lattice vector."""
    y = tuple(to_fraction(v) for v in y)
    if len(y) != l.n or not l.contains(y):
        raise NotMember(f"reference vector {[str(v) for v in y]} is not in the lattice")
    g = l.gram_stored()
    den = l.k_scale * common_denominator(x for row in g for x in row)
    top = _numerator(cutoff, den)
    pairing = [sum((b * v for b, v in zip(row, y)), Fraction(0)) / l.k_scale for row in l.basis]
    terms: Dict[Tuple[int, int], int] = {}
    for coeffs, norm in l.short_vectors(Fraction(top, den)):
        index = sum((c * p for c, p in zip(coeffs, pairing)), Fraction(0))
        key = (_norm_numerator(norm, den), _norm_numerator(index, den))
        terms[key] = terms.get(key, 0) + 1
    return JacobiQSeries(den, terms, top)


# Coordinate theta functions ---------------------------------------------


def _residue_class(k: int, a: int, bound: int) -> List[int]:
    """b ≡ a (mod k) with |b| ≤ bound."""
    a %= k
    start = -bound + ((a + bound) % k)
    return list(range(start, bound + 1, k))


def theta_fa(ring: RingZk, a: int, cutoff: Exponent) -> QSeries:
    """f_a = Σ_{b ≡ a (k)} q^{b²/k}."""
    k = ring.k
    top = _numerator(cutoff, k)
    terms: Dict[int, int] = {}
    for b in _residue_class(k, a, math.isqrt(max(top, 0))):
        if b * b <= top:
            terms[b * b] = terms.get(b * b, 0) + 1
    return QSeries(k, terms, top)


def theta_fa2(ring: RingZk, a: Sequence[int], cutoff: Exponent) -> QSeries2:
    """Genus-2 f_a for a ∈ Z_k²: Σ_{b ≡ a} exp((1/k)πi bᵀτb)."""
    k = ring.k
    top = _numerator(cutoff, k)
    bound = math.isqrt(max(top, 0))
    terms: Dict[Tuple[int, int, int], int] = {}
    for b1 in _residue_class(k, a[0], bound):
        for b2 in _residue_class(k, a[1], bound):
            if b1 * b1 + b2 * b2 <= top:
                key = (b1 * b1, 2 * b1 * b2, b2 * b2)
                terms[key] = terms.get(key, 0) + 1
    return QSeries2(k, terms, top)


def psi_a(ring: RingZk, a: int, cutoff: Exponent) -> JacobiQSeries:
    """ψ_a: f_a viewed as a Jacobi series with ζ-exponent 0."""
    f = theta_fa(ring, a, cutoff)
    return JacobiQSeries(f.den, {(m, 0): c for m, c in f.terms.items()}, f.cutoff)


def phi_a(ring: RingZk, a: int, cutoff: Exponent) -> JacobiQSeries:
    """φ_a = Σ_{b ≡ a (k)} q^{b²/k} ζ^b."""
    k = ring.k
    top = _numerator(cutoff, k)
    terms: Dict[Tuple[int, int], int] = {}
    for b in _residue_class(k, a, math.isqrt(max(top, 0))):
        if b * b <= top:
            terms[(b * b, b * k)] = terms.get((b * b, b * k), 0) + 1
    return JacobiQSeries(k, terms, top)


def substitute_series(p: MultiPoly, images: Sequence[_Series]) -> _Series:
    """Σ coeff·∏ images[i]^e_i over the monomials of p; coefficients must be integers."""
    if len(images) != p.family.arity:
        raise ValueError(f"{len(images)} series for {p.family.arity} variables")
    if not images:
        raise ValueError("substitution needs at least one image series")
    kind = type(images[0])
    den = math.lcm(*(s.den for s in images))
    images = [s.rescaled(den) for s in images]
    cutoff = min(s.cutoff for s in images)
    powers: Dict[Tuple[int, int], _Series] = {}

    def power(var: int, e: int) -> _Series:
        if (var, e) not in powers:
            powers[(var, e)] = images[var] ** e
        return powers[(var, e)]

    result = kind.zero(den, cutoff)
    for exp, c in p.sorted_terms():
        value = integer_value(c)
        if value is None:
            raise NonIntegerCoefficient(f"coefficient {c} of {p.monomial_text(exp)} is not an integer")
        term = kind.one(den, cutoff) * value
        for var, e in enumerate(exp):
            if e:
                term = term * power(var, e)
        result = result + term
    return result


def _series_report(flavor: str, lhs: _Series, rhs: _Series, details: dict) -> Report:
    diff = lhs.difference(rhs)
    passed = diff is None
    witness = None
    if not passed:
        key, left, right = diff
        witness = {"exponent": type(lhs)._key_text(key, math.lcm(lhs.den, rhs.den)), "lhs": left, "rhs": right}
        logger.warning(f"{flavor} correspondence fails at {witness['exponent']}: {left} vs {right}")
    return Report(flavor=flavor, passed=passed, lhs=lhs.to_json(), rhs=rhs.to_json(),
                  witness=witness, details=details)


def verify_theta_correspondence(c: Code, op: HaydenOperator, genus: int = 1,
                                cutoff: Optional[Exponent] = None) -> Report:
    """Theta series of the orbit Construction-A lattice of Cθ_H against cwe_g(Cθ_H) at x_a ← f_a."""
    if genus not in (1, 2):
        raise ValueError("theta correspondence is implemented for genus 1 and 2")
    settings = get_config().theta
    if cutoff is None:
        cutoff = settings.default_cutoff if genus == 1 else settings.genus2_cutoff
    d = project_theta(c, op)
    lattice = orbit_construction_a(d)
    enumerator = cwe_g(d, genus)
    labels = enumerator.family.labels()
    if genus == 1:
        lhs = theta_lattice(lattice, cutoff)
        rhs = substitute_series(enumerator, [theta_fa(c.ring, a[0], cutoff) for a in labels])
    else:
        lhs = theta_lattice_genus2(lattice, cutoff)
        rhs = substitute_series(enumerator, [theta_fa2(c.ring, a, cutoff) for a in labels])
    return _series_report(
        "theta",
        lhs,
        rhs,
        {"genus": genus, "cutoff": str(to_fraction(cutoff)), "orbits": d.t, "code_size": d.size},
    )


def verify_jacobi_correspondence(c: Code, op: HaydenOperator, T: Optional[JacobiSet] = None,
                                 cutoff: Optional[Exponent] = None) -> Report:
    """CJ(Cθ_H, T) at x_a ← φ_a, y_a ← ψ_a against the Jacobi series with y = √k·1_T."""
    if cutoff is None:
        cutoff = get_config().theta.default_cutoff
    k = c.ring.k
    d = project_theta(c, op)
    if T is None:
        T = JacobiSet(t=d.t, places=(1,) if d.t else ())
    lattice = orbit_construction_a(d)
    places = set(T.places)
    y = tuple(k if j + 1 in places else 0 for j in range(d.t))
    lhs = jacobi_theta_lattice(lattice, y, cutoff)
    images = [phi_a(c.ring, a, cutoff) for a in range(k)] + [psi_a(c.ring, a, cutoff) for a in range(k)]
    rhs = substitute_series(jacobi_poly(d, T), images)
    return _series_report(
        "jacobi-theta",
        lhs,
        rhs,
        {"jacobi_set": list(T.places), "cutoff": str(to_fraction(cutoff)), "orbits": d.t},
    )


# Jacobi transformation formula ------------------------------------------


def _gaussian_sum(gram: Sequence[Sequence[Fraction]], weight, bound: Fraction,
                  inner_bound: Fraction) -> Tuple[mpf, mpf, int]:
    """Σ exp(-π·weight·cGc) over cGc ≤ bound, with the part beyond inner_bound separately."""
    total = mpf(0)
    shell = mpf(0)
    count = 0
    for _coeffs, norm in enumerate_short(gram, bound):
        term = mpmath.exp(-mp.pi * weight * mpf(norm.numerator) / norm.denominator)
        total += term
        if norm > inner_bound:
            shell += term
        count += 1
    return total, shell, count


def _fraction_bound(x: float) -> Fraction:
    return Fraction(math.ceil(x * 1000), 1000)


def _converged_sum(gram: Sequence[Sequence[Fraction]], weight, start: Fraction, tol: float,
                   settings: JacobiFormulaSettings) -> Tuple[mpf, int]:
    """Widen the norm bound by the safety factor until the newest shell adds at most tol/10."""
    inner = start
    for _ in range(settings.max_widenings + 1):
        outer = _fraction_bound(settings.safety_factor * float(inner))
        total, shell, count = _gaussian_sum(gram, weight, outer, inner)
        if shell <= tol / 10:
            return total, count
        logger.debug(f"shell beyond norm {inner} adds {mpmath.nstr(shell, 5)}, widening to {outer}")
        inner = outer
    raise NotConverged(f"shell beyond norm {inner} still contributes {mpmath.nstr(shell, 5)} > {tol / 10}")


def jacobi_formula_check(l: Lattice, z0: complex = 1j, tol: Optional[float] = None) -> Report:
    """ϑ_{Λ*}(z) = √det(Gram)·(i/z)^{r/2}·ϑ_Λ(-1/z) at z = iy, summed numerically.

    Λ* is the dual inside the span, so rank-deficient lattices use their rank r.
    """
    settings = get_config().jacobi_formula
    tol = settings.default_tol if tol is None else tol
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    z0 = complex(z0)
    if z0.real != 0 or z0.imag <= 0:
        raise ValueError(f"z0 must lie on the positive imaginary axis, got {z0}")
    gram = l.gram()
    rank = l.rank
    dual_gram = rat_inverse(gram) if rank else []
    det = l.gram_determinant()

    # a single term exp(-π·w·N) drops below tol/10 at the starting bound N
    margin = max(math.log(10 / tol) / math.pi, 1.0)
    with mp.workdps(settings.precision_digits):
        y = mpf(z0.imag)
        lhs, lhs_count = _converged_sum(dual_gram, y, _fraction_bound(margin / z0.imag), tol, settings)
        rhs_sum, rhs_count = _converged_sum(gram, 1 / y, _fraction_bound(margin * z0.imag), tol, settings)
        scale = mpmath.sqrt(mpf(det.numerator) / det.denominator) * y ** (-mpf(rank) / 2)
        rhs = scale * rhs_sum
        difference = abs(lhs - rhs)
        passed = bool(difference <= tol)
        lhs_text, rhs_text = mpmath.nstr(lhs, 20), mpmath.nstr(rhs, 20)
        diff_text = mpmath.nstr(difference, 5)

    if not passed:
        logger.warning(f"Jacobi formula off by {diff_text} at z = {z0}")
    return Report(
        flavor="jacobi-formula",
        passed=passed,
        lhs=lhs_text,
        rhs=rhs_text,
        witness=None if passed else {"difference": diff_text},
        details={
            "z": str(z0),
            "rank": rank,
            "gram_determinant": str(det),
            "tol": tol,
            "difference": diff_text,
            "terms": lhs_count + rhs_count,
        },
    )


def check_theta_fa_partition(ring: RingZk, cutoff: Exponent) -> Report:
    """Σ_a f_a equals the theta series of (1/√k)Z."""
    total = QSeries.zero(ring.k, _numerator(cutoff, ring.k))
    for a in ring.elements():
        total = total + theta_fa(ring, a, cutoff)
    reference = theta_lattice(Lattice(n=1, k_scale=ring.k, basis=((Fraction(1),),)), cutoff)
    return _series_report("theta-partition", total, reference, {"modulus": ring.k})
