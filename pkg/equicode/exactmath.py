"""
Exact arithmetic substrate.

Rationals are fractions.Fraction. Cyclotomic numbers live in the group ring
Z[x]/(x^k - 1) and are only reduced modulo the cyclotomic polynomial Φ_k when
compared, so character sums stay integer convolutions. Integer and rational
matrix work (Hermite form, inverses, ranks, nullspaces) goes through sympy.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Matrix, Rational, cyclotomic_poly, symbols
from sympy.matrices.normalforms import hermite_normal_form

logger = logging.getLogger(__name__)

Rat = Fraction
IntRow = Tuple[int, ...]
RatRow = Tuple[Fraction, ...]

_X = symbols("x")


@lru_cache(maxsize=None)
def phi_coeffs(k: int) -> Tuple[int, ...]:
    """Coefficients of Φ_k, lowest degree first."""
    poly = cyclotomic_poly(k, _X, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


class Cyclotomic:
    """An element Σ coeffs[j]·ζ_k^j of Z[ζ_k].

    `coeffs` always has length k and is indexed by exponents mod k.
    """

    __slots__ = ("_k", "_coeffs")

    def __init__(self, k: int, coeffs: Iterable[int]) -> None:
        if k < 1:
            raise ValueError(f"conductor must be positive, got {k}")
        dense = [0] * k
        for j, c in enumerate(coeffs):
            dense[j % k] += int(c)
        self._k = k
        self._coeffs = tuple(dense)

    @property
    def k(self) -> int:
        return self._k

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    @classmethod
    def integer(cls, k: int, n: int) -> Cyclotomic:
        return cls(k, (n,))

    @classmethod
    def zeta_power(cls, k: int, e: int) -> Cyclotomic:
        coeffs = [0] * k
        coeffs[e % k] = 1
        return cls(k, coeffs)

    def _coerce(self, other: Union[int, Cyclotomic]) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.k != self._k:
                raise ValueError(f"conductor mismatch: {self._k} vs {other.k}")
            return other
        if isinstance(other, int):
            return Cyclotomic.integer(self._k, other)
        return NotImplemented

    def __add__(self, other: Union[int, Cyclotomic]) -> Cyclotomic:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self._k, (a + b for a, b in zip(self._coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self._k, (-a for a in self._coeffs))

    def __sub__(self, other: Union[int, Cyclotomic]) -> Cyclotomic:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Union[int, Cyclotomic]) -> Cyclotomic:
        if isinstance(other, int):
            return Cyclotomic(self._k, (a * other for a in self._coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self._k
        out = [0] * k
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % k] += a * b
        return Cyclotomic(k, out)

    __rmul__ = __mul__

    def shift(self, e: int) -> Cyclotomic:
        """Multiply by ζ_k^e (a cyclic rotation of the coefficients)."""
        k = self._k
        e %= k
        if e == 0:
            return self
        return Cyclotomic(k, self._coeffs[-e:] + self._coeffs[:-e])

    def canonical(self) -> Tuple[int, ...]:
        """Remainder modulo Φ_k, length deg Φ_k."""
        phi = phi_coeffs(self._k)
        deg = len(phi) - 1
        rem = list(self._coeffs)
        for i in range(len(rem) - 1, deg - 1, -1):
            c = rem[i]
            if c:
                base = i - deg
                for j, p in enumerate(phi):
                    rem[base + j] -= c * p
        return tuple(rem[:deg]) if deg else ()

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def to_integer(self) -> Optional[int]:
        """The rational integer this element equals, or None."""
        can = self.canonical()
        if any(can[1:]):
            return None
        return can[0] if can else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Cyclotomic.integer(self._k, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self._k == other.k and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self._k, self.canonical()))

    def __repr__(self) -> str:
        return f"Cyclotomic({self._k}, {list(self._coeffs)})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.canonical()):
            if c == 0:
                continue
            if j == 0:
                body = str(abs(c))
            else:
                power = "z" if j == 1 else f"z^{j}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def cyclo_reduce(v: Cyclotomic) -> Cyclotomic:
    """Canonical representative of v modulo Φ_k (degree < deg Φ_k)."""
    return Cyclotomic(v.k, v.canonical())


# Matrices ----------------------------------------------------------------


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    rat = Rational(value)
    return Fraction(int(rat.p), int(rat.q))


def _rational(x) -> Rational:
    f = to_fraction(x)
    return Rational(f.numerator, f.denominator)


def to_sympy(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([[_rational(x) for x in row] for row in rows])


def from_sympy(m: Matrix) -> List[RatRow]:
    return [tuple(to_fraction(m[i, j]) for j in range(m.cols)) for i in range(m.rows)]


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        d = lcm(d, to_fraction(v).denominator)
    return d


def hnf(rows: Sequence[Sequence[int]]) -> List[IntRow]:
    """Row-style Hermite normal form of the integer row lattice.

    Output rows are upper echelon with positive pivots, every entry above a
    pivot lies in [0, pivot), and zero rows are dropped. sympy's Hermite form
    is column-style with pivots at the bottom, so the columns are reversed
    before and after.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    flipped = Matrix([list(reversed(r)) for r in rows]).T
    w = hermite_normal_form(flipped)
    basis = [tuple(int(w[i, j]) for i in range(n - 1, -1, -1)) for j in range(w.cols)]
    basis.reverse()
    return basis


def rat_hnf(rows: Sequence[Sequence]) -> List[RatRow]:
    """Hermite form of a rational row lattice: clear denominators, reduce, divide back."""
    rows = [tuple(to_fraction(x) for x in r) for r in rows]
    d = common_denominator(x for r in rows for x in r)
    ints = [tuple(int(x * d) for x in r) for r in rows]
    return [tuple(Fraction(x, d) for x in r) for r in hnf(ints)]


def rat_rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return to_sympy(rows).rank()


def rat_inverse(rows: Sequence[Sequence]) -> List[RatRow]:
    return from_sympy(to_sympy(rows).inv())


def rat_transpose(rows: Sequence[Sequence]) -> List[RatRow]:
    return [tuple(to_fraction(x) for x in col) for col in zip(*rows)]


def rat_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[RatRow]:
    cols = list(zip(*b))
    return [
        tuple(sum((to_fraction(x) * to_fraction(y) for x, y in zip(row, col)), Fraction(0)) for col in cols)
        for row in a
    ]


def rat_vecmat(v: Sequence, m: Sequence[Sequence]) -> RatRow:
    return rat_matmul([v], m)[0]


def rat_nullspace(rows: Sequence[Sequence]) -> List[RatRow]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    vectors = to_sympy(rows).nullspace()
    return [tuple(to_fraction(v[i]) for i in range(v.rows)) for v in vectors]


def rat_determinant(rows: Sequence[Sequence]) -> Fraction:
    return to_fraction(to_sympy(rows).det())


def solve_left(basis: Sequence[Sequence], v: Sequence) -> Optional[RatRow]:
    """Coefficients x with x·basis = v, or None when v is outside the row span."""
    if not basis:
        return () if not any(to_fraction(x) for x in v) else None
    b = to_sympy(basis)
    target = to_sympy([v]).T
    try:
        sol, params = b.T.gauss_jordan_solve(target)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(to_fraction(sol[i, 0]) for i in range(sol.rows))


def snf_preimage(m: Sequence[Sequence]) -> List[IntRow]:
    """Basis of the integer lattice {x ∈ Z^r : x·m ∈ Z^r}.

    With d the common denominator and c_j the columns of d·m, the set is the
    dual of the lattice K generated by Z^r and the vectors c_j/d. K is full
    rank, so the answer is (basis of K)^{-T}. m may be singular.
    """
    m = [tuple(to_fraction(x) for x in row) for row in m]
    r = len(m)
    if any(len(row) != r for row in m):
        raise ValueError("snf_preimage needs a square matrix")
    if r == 0:
        return []
    d = common_denominator(x for row in m for x in row)
    scaled = [[int(x * d) for x in row] for row in m]
    generators = [tuple(d if i == j else 0 for j in range(r)) for i in range(r)]
    generators += [tuple(scaled[i][j] for i in range(r)) for j in range(r)]
    k_basis = [tuple(Fraction(x, d) for x in row) for row in hnf(generators)]
    dual = rat_transpose(rat_inverse(k_basis))
    ints = []
    for row in dual:
        if any(x.denominator != 1 for x in row):
            raise ArithmeticError("preimage basis is not integral")
        ints.append(tuple(int(x) for x in row))
    return hnf(ints)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    return isqrt(n) ** 2 == n


def egcd_inverse(m: int, k: int) -> Optional[int]:
    """m^{-1} mod k, or None when gcd(m, k) > 1."""
    if gcd(m, k) != 1:
        return None
    return pow(m % k, -1, k) if k > 1 else 0
