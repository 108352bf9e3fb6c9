"""
Linear codes over Z_k stored as explicit codeword sets.

Covers spans, G-invariance, brute-force duals, the projection Cθ_H, the
orbit-coordinate form of θ_H-fixed words, the H-inner product and H-dual,
and executable checks of Hayden's decomposition and of the orbit-length
matrix identity.
"""

import logging
from functools import cached_property
from itertools import product
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import get_config, guard_enumeration
from .errors import DimensionMismatch, EquicodeError, NotOrbitConstant, TooLarge
from .frobring import RingZk
from .models import Report
from .permgrp import (
    HaydenOperator,
    OrbitLengthMatrix,
    OrbitPartition,
    PermGroup,
    ker_theta_mod,
    orbit_length_matrix,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
OrbitWord = Tuple[int, ...]

SUMMARY_LIMIT = 64


def format_word(w: Sequence[int], k: int) -> str:
    """Digits run together when k ≤ 10, comma separated otherwise."""
    if k <= 10:
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def word_set_summary(words: Iterable[Sequence[int]], k: int) -> dict:
    ordered = sorted(tuple(w) for w in words)
    summary = {"size": len(ordered)}
    if len(ordered) <= SUMMARY_LIMIT:
        summary["words"] = [format_word(w, k) for w in ordered]
    return summary


def _add(u: Sequence[int], v: Sequence[int], k: int) -> Word:
    return tuple((a + b) % k for a, b in zip(u, v))


def _span_with(words: Set[Word], g: Sequence[int], k: int) -> Set[Word]:
    multiples = {tuple((a * c) % k for c in g) for a in range(k)}
    return {_add(w, m, k) for w in words for m in multiples}


def greedy_generators(words: Iterable[Word], k: int, n: int) -> Tuple[Word, ...]:
    """A generating set picked from `words`, adding each word not yet spanned."""
    spanned: Set[Word] = {(0,) * n}
    gens = []
    for w in sorted(words):
        if w not in spanned:
            gens.append(w)
            spanned = _span_with(spanned, w, k)
    return tuple(gens)


class Code(BaseModel):
    """A Z_k-submodule of Z_k^n with a generating set.

    The codeword set must equal the span of the generators.
    """

    ring: RingZk
    n: int = Field(ge=1)
    codewords: Tuple[Word, ...]
    generators: Tuple[Word, ...] = ()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def is_submodule(self):
        k = self.ring.k
        words = set(self.codewords)
        if len(words) != len(self.codewords):
            raise ValueError("codewords must be distinct")
        for w in self.codewords:
            if len(w) != self.n or any(not 0 <= x < k for x in w):
                raise ValueError(f"{w} is not a reduced word of length {self.n}")
        spanned: Set[Word] = {(0,) * self.n}
        for g in self.generators:
            if len(g) != self.n:
                raise ValueError(f"generator {g} does not have length {self.n}")
            spanned = _span_with(spanned, g, k)
        if spanned != words:
            raise ValueError("codewords are not the span of the generators")
        return self

    @classmethod
    def from_words(cls, ring: RingZk, n: int, words: Iterable[Sequence[int]]) -> "Code":
        """Wrap a set already known to be a submodule; generators are chosen greedily."""
        ordered = tuple(sorted({tuple(w) for w in words}))
        return cls(ring=ring, n=n, codewords=ordered, generators=greedy_generators(ordered, ring.k, n))

    @cached_property
    def word_set(self) -> FrozenSet[Word]:
        return frozenset(self.codewords)

    @property
    def size(self) -> int:
        return len(self.codewords)

    def __contains__(self, w: Sequence[int]) -> bool:
        return tuple(w) in self.word_set

    def summary(self) -> dict:
        return word_set_summary(self.codewords, self.ring.k)


class OrbitCode(BaseModel):
    """A submodule of Z_k^t in orbit coordinates (u_1, …, u_t).

    Each coefficient vector stands for the word Σ u_i·1_{orbit i} of Vθ_H.
    """

    ring: RingZk
    partition: OrbitPartition
    words: Tuple[OrbitWord, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def words_have_arity(self):
        t = self.partition.t
        if any(len(u) != t for u in self.words):
            raise ValueError(f"orbit words must have {t} coefficients")
        return self

    @classmethod
    def from_words(cls, ring: RingZk, partition: OrbitPartition, words: Iterable[Sequence[int]]) -> "OrbitCode":
        return cls(ring=ring, partition=partition, words=tuple(sorted({tuple(u) for u in words})))

    @property
    def t(self) -> int:
        return self.partition.t

    @property
    def size(self) -> int:
        return len(self.words)

    @cached_property
    def word_set(self) -> FrozenSet[OrbitWord]:
        return frozenset(self.words)

    @cached_property
    def generators(self) -> Tuple[OrbitWord, ...]:
        return greedy_generators(self.words, self.ring.k, self.t)

    def expand_word(self, u: Sequence[int]) -> Word:
        p = self.partition
        return tuple(u[p.orbit_of[j]] for j in range(p.n))

    def expanded(self) -> List[Word]:
        return sorted(self.expand_word(u) for u in self.words)

    def summary(self) -> dict:
        data = word_set_summary(self.words, self.ring.k)
        if "words" in data:
            data["expanded"] = [format_word(w, self.ring.k) for w in self.expanded()]
        return data


def code_span(ring: RingZk, n: int, gens: Sequence[Sequence[int]], max_enum: Optional[int] = None) -> Code:
    """All Z_k-linear combinations of `gens`."""
    k = ring.k
    limit = max_enum if max_enum is not None else get_config().limits.max_span
    reduced = []
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch(f"generator {list(g)} does not have length {n}")
        reduced.append(tuple(x % k for x in g))
    words: Set[Word] = {(0,) * n}
    for g in reduced:
        words = _span_with(words, g, k)
        if len(words) > limit:
            raise TooLarge(f"span exceeds {limit} codewords")
    logger.debug(f"span of {len(reduced)} generators over {ring.label}: {len(words)} words")
    return Code(ring=ring, n=n, codewords=tuple(sorted(words)), generators=tuple(r for r in reduced if any(r)))


def g_code_span(ring: RingZk, n: int, gens: Sequence[Sequence[int]], group: PermGroup,
                max_enum: Optional[int] = None) -> Code:
    """The smallest G-code containing `gens`: the span of every image wg."""
    images = {elem.apply(tuple(x % ring.k for x in g)) for g in gens for elem in group.elements}
    return code_span(ring, n, sorted(images), max_enum)


def is_g_code(c: Code, g: PermGroup) -> bool:
    if g.n != c.n:
        raise DimensionMismatch(f"group degree {g.n} vs code length {c.n}")
    return all(perm.apply(w) in c.word_set for perm in g.generators for w in c.codewords)


def inner(u: Sequence[int], v: Sequence[int], k: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % k


def dual(c: Code, max_enum: Optional[int] = None) -> Code:
    """^⊥C by enumerating Z_k^n against the generators of C."""
    k, n = c.ring.k, c.n
    guard_enumeration(k ** n, "dual code", max_enum)
    gens = c.generators or greedy_generators(c.codewords, k, n)
    words = [u for u in product(range(k), repeat=n) if all(inner(u, g, k) == 0 for g in gens)]
    if len(words) * c.size != k ** n:
        raise EquicodeError(f"|C|·|C^⊥| = {c.size}·{len(words)} differs from {k}^{n}")
    return Code.from_words(c.ring, n, words)


def orbit_form(w: Sequence[int], p: OrbitPartition) -> OrbitWord:
    """(u_1..u_t) for an orbit-constant word; NotOrbitConstant otherwise."""
    if len(w) != p.n:
        raise DimensionMismatch(f"word of length {len(w)} for partition of {p.n} points")
    coeffs = []
    for orbit in p.orbits:
        values = {w[i - 1] for i in orbit}
        if len(values) != 1:
            raise NotOrbitConstant(f"word {list(w)} is not constant on orbit {orbit}")
        coeffs.append(values.pop())
    return tuple(coeffs)


def project_theta(c: Code, op: HaydenOperator) -> OrbitCode:
    """Cθ_H in orbit coordinates."""
    if op.n != c.n or op.ring != c.ring:
        raise DimensionMismatch("operator and code live over different spaces")
    images = {op.apply(w) for w in c.codewords}
    return OrbitCode.from_words(c.ring, op.partition, (orbit_form(w, op.partition) for w in images))


def h_weight(u: Sequence[int]) -> int:
    return sum(1 for x in u if x)


def h_inner(u: Sequence[int], v: Sequence[int], k: int) -> int:
    """(u, v)_H = Σ u_i v_i on orbit coefficients."""
    return inner(u, v, k)


def h_dual(d: OrbitCode, max_enum: Optional[int] = None) -> OrbitCode:
    """{v ∈ Z_k^t : (u, v)_H = 0 for all u ∈ D}."""
    k, t = d.ring.k, d.t
    guard_enumeration(k ** t, "H-dual", max_enum)
    gens = d.generators
    words = [v for v in product(range(k), repeat=t) if all(h_inner(u, v, k) == 0 for u in gens)]
    return OrbitCode.from_words(d.ring, d.partition, words)


def scale_by_M(d: OrbitCode, m: OrbitLengthMatrix) -> OrbitCode:
    """Multiply each coefficient u_i by the length of orbit i, mod k."""
    p = d.partition
    if len(m.diagonal) != p.n:
        raise DimensionMismatch("orbit-length matrix does not match the partition")
    factors = [m.diagonal[orbit[0] - 1] for orbit in p.orbits]
    k = d.ring.k
    return OrbitCode.from_words(
        d.ring, p, (tuple((x * f) % k for x, f in zip(u, factors)) for u in d.words)
    )


def _first_difference(a: Set[Word], b: Set[Word], k: int) -> Optional[dict]:
    only_a = sorted(a - b)
    only_b = sorted(b - a)
    if only_a:
        return {"lhs_only": format_word(only_a[0], k)}
    if only_b:
        return {"rhs_only": format_word(only_b[0], k)}
    return None


def verify_hayden(c: Code, op: HaydenOperator, max_enum: Optional[int] = None) -> Report:
    """^⊥(Cθ_H) = ker θ_H ⊕ (^⊥C)θ_H, with set equality and directness."""
    k, n = c.ring.k, c.n
    images = sorted({op.apply(w) for w in c.codewords})
    theta_code = Code.from_words(c.ring, n, images)
    spanned = code_span(c.ring, n, [op.apply(g) for g in c.generators])
    if spanned.word_set != theta_code.word_set:
        raise EquicodeError("Cθ_H is not a submodule; θ_H is not linear on this input")

    lhs = set(dual(theta_code, max_enum).codewords)
    kernel = ker_theta_mod(c.ring, op, max_enum)
    dual_theta = {op.apply(w) for w in dual(c, max_enum).codewords}
    rhs = {_add(a, b, k) for a in kernel for b in dual_theta}
    zero = (0,) * n
    direct = len(kernel) * len(dual_theta) == len(lhs) and set(kernel) & dual_theta == {zero}
    passed = lhs == rhs and direct
    witness = _first_difference(lhs, rhs, k)
    if witness is None and not direct:
        witness = {"direct": False, "kernel": len(kernel), "dual_theta": len(dual_theta)}
    if not passed:
        logger.warning(f"Hayden decomposition failed over {c.ring.label}: {witness}")
    return Report(
        flavor="hayden",
        passed=passed,
        lhs=word_set_summary(lhs, k),
        rhs=word_set_summary(rhs, k),
        witness=witness,
        details={
            "subgroup_order": op.group.order,
            "orbits": op.partition.t,
            "kernel_size": len(kernel),
            "dual_theta_size": len(dual_theta),
            "direct": direct,
        },
    )


def verify_orbit_matrix(c: Code, op: HaydenOperator, max_enum: Optional[int] = None) -> Report:
    """^⊥_H(Cθ_H) = (^⊥Cθ_H)M_H."""
    k = c.ring.k
    lhs = h_dual(project_theta(c, op), max_enum)
    rhs = scale_by_M(project_theta(dual(c, max_enum), op), orbit_length_matrix(op.partition))
    passed = lhs.word_set == rhs.word_set
    witness = _first_difference(set(lhs.words), set(rhs.words), k)
    if not passed:
        logger.warning(f"orbit-length identity failed over {c.ring.label}: {witness}")
    return Report(
        flavor="orbit-matrix",
        passed=passed,
        lhs=lhs.summary(),
        rhs=rhs.summary(),
        witness=witness,
        details={"orbit_lengths": list(op.partition.lengths)},
    )
