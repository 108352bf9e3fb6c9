"""
Randomized verification sweeps.

Generates small G-codes over Z_k together with a subgroup H of G whose order
is invertible mod k, runs one named check on each instance and collects pass
counts. Checks that do not apply to an instance skip it, and the sweep keeps
drawing until the requested number of instances has been checked.
Instances are drawn from a seeded random.Random, so a sweep is reproducible
from (check, count, seed).
"""

import logging
import random
import time
from datetime import datetime, timezone
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Tuple

from .config import get_config
from .enumerators import JacobiSet, weight_enum
from .errors import EquicodeError, NotDivisible
from .frobring import RingZk
from .gcode import Code, dual, g_code_span, project_theta, verify_hayden, verify_orbit_matrix
from .harmonic import f_tilde, f_tilde_bruteforce, harm_basis, z_poly
from .lattice import construction_a, dual_lattice, verify_glattice_correspondence
from .macwilliams import FLAVORS, check_identity, mw_hamming
from .models import Report, SweepSummary
from .permgrp import HaydenOperator, PermGroup, Permutation, group_closure, hayden
from .theta import verify_jacobi_correspondence, verify_theta_correspondence

logger = logging.getLogger(__name__)

Instance = Tuple[Code, PermGroup, HaydenOperator]


class SweepMetrics:
    """Pass/skip counts and timing for one sweep."""

    def __init__(self):
        self.start_time: Optional[datetime] = None
        self.instances: int = 0
        self.passed: int = 0
        self.skipped: int = 0
        self.per_modulus: Dict[int, int] = {}
        self.durations: List[float] = []
        self.first_failure: Optional[Dict[str, Any]] = None

    def start_tracking(self) -> None:
        self.start_time = datetime.now(timezone.utc)
        self.instances = self.passed = self.skipped = 0
        self.per_modulus.clear()
        self.durations.clear()
        self.first_failure = None

    def record(self, k: int, report: Optional[Report], duration: float, instance: Instance) -> None:
        self.durations.append(duration)
        if report is None:
            self.skipped += 1
            return
        self.instances += 1
        if report.passed:
            self.passed += 1
            self.per_modulus[k] = self.per_modulus.get(k, 0) + 1
        elif self.first_failure is None:
            code, group, op = instance
            self.first_failure = {
                "modulus": k,
                "length": code.n,
                "generators": [list(g) for g in code.generators],
                "group": [g.cycle_string() for g in group.generators],
                "subgroup": [h.cycle_string() for h in op.group.generators],
                "report": report.to_json(),
            }

    def elapsed(self) -> float:
        if not self.start_time:
            return 0.0
        return (datetime.now(timezone.utc) - self.start_time).total_seconds()

    def get_summary(self) -> Dict[str, Any]:
        average = sum(self.durations) / len(self.durations) if self.durations else 0.0
        return {
            "instances": self.instances,
            "passed": self.passed,
            "skipped": self.skipped,
            "elapsed_seconds": self.elapsed(),
            "average_instance_time": average,
        }


def subgroup_order_for(k: int, rng: random.Random) -> int:
    """A configured subgroup order coprime to k, or 1 when none is."""
    orders = [m for m in get_config().sweep.subgroup_orders if gcd(m, k) == 1]
    return rng.choice(orders) if orders else 1


def random_subgroup(n: int, order: int, rng: random.Random) -> PermGroup:
    """Cyclic group generated by disjoint order-cycles on a random subset of points."""
    if order == 1 or n < order:
        return group_closure(n, [Permutation.identity(n)])
    points = list(range(1, n + 1))
    rng.shuffle(points)
    cycles = rng.randint(1, n // order)
    images = list(range(1, n + 1))
    for c in range(cycles):
        cycle = points[c * order:(c + 1) * order]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b
    return group_closure(n, [Permutation(images=tuple(images))])


def random_overgroup(h: PermGroup, rng: random.Random) -> PermGroup:
    """⟨H, τ⟩ for a random transposition τ, so H is a subgroup of the result."""
    n = h.n
    if n < 2:
        return h
    a, b = rng.sample(range(1, n + 1), 2)
    images = list(range(1, n + 1))
    images[a - 1], images[b - 1] = b, a
    return group_closure(n, list(h.generators) + [Permutation(images=tuple(images))])


def random_instance(rng: random.Random, k: int, n: int) -> Instance:
    """
    A random G-code over Z_k of length n with θ_H of a subgroup H ≤ G.

    |H| is coprime to k. With probability ``overgroup_rate`` G adds a random
    transposition to the generators of H, otherwise G = H.
    """
    ring = RingZk(k=k)
    subgroup = random_subgroup(n, subgroup_order_for(k, rng), rng)
    if rng.random() < get_config().sweep.overgroup_rate:
        group = random_overgroup(subgroup, rng)
    else:
        group = subgroup
    gens = [tuple(rng.randrange(k) for _ in range(n)) for _ in range(rng.randint(1, 2))]
    code = g_code_span(ring, n, gens, group)
    return code, group, hayden(ring, subgroup)


# Checks -----------------------------------------------------------------


def _cweg_fits(instance: Instance) -> bool:
    settings = get_config().sweep
    code, _group, op = instance
    return code.ring.k ** 2 <= settings.cweg_max_variables and op.partition.t <= settings.cweg_max_orbits


def _small_orbits(instance: Instance) -> bool:
    return instance[2].partition.t <= get_config().sweep.cweg_max_orbits


def check_harmonic_structure(instance: Instance) -> Report:
    """Divisibility by (xy)^d, deg Z = t - 2d, and f̃ against its definition."""
    code, _group, op = instance
    settings = get_config().sweep
    d_code = project_theta(code, op)
    t, k = d_code.t, code.ring.k
    problems: List[Dict[str, Any]] = []
    checked = 0
    oracle = k ** t <= settings.oracle_max_words
    for d in range(min(settings.harmonic_max_degree, t) + 1):
        for f in harm_basis(t, d):
            checked += 1
            try:
                z = z_poly(d_code, f)
            except NotDivisible as e:
                problems.append({"degree": d, "error": str(e)})
                continue
            if z.degree != t - 2 * d:
                problems.append({"degree": d, "z_degree": z.degree})
            if oracle:
                for u in d_code.words:
                    if f_tilde(f, u, code.ring) != f_tilde_bruteforce(f, u, code.ring):
                        problems.append({"degree": d, "word": list(u)})
                        break
    return Report(
        flavor="harmonic-structure",
        passed=not problems,
        lhs=checked,
        rhs=checked - len(problems),
        witness=problems[0] if problems else None,
        details={"orbits": t, "oracle": oracle},
    )


def check_construction_a(instance: Instance) -> Report:
    """Gram determinant of Λ(C) equals k^n / |C|²."""
    code = instance[0]
    lattice = construction_a(code)
    expected = code.ring.k ** code.n
    det = lattice.gram_determinant()
    passed = det * code.size ** 2 == expected
    return Report(
        flavor="construction-a",
        passed=passed,
        lhs=str(det),
        rhs=f"{expected}/{code.size ** 2}",
        witness=None if passed else {"gram_determinant": str(det)},
    )


def check_involutions(instance: Instance) -> Report:
    """dual∘dual, double Hamming MacWilliams and dual_lattice∘dual_lattice are identities."""
    code = instance[0]
    c_dual = dual(code)
    code_ok = dual(c_dual).word_set == code.word_set
    w = weight_enum(code)
    transform_ok = mw_hamming(mw_hamming(w, code.ring, code.size), code.ring, c_dual.size) == w
    lattice = construction_a(code)
    lattice_ok = dual_lattice(dual_lattice(lattice)) == lattice
    passed = code_ok and transform_ok and lattice_ok
    outcome = {"code": code_ok, "hamming": transform_ok, "lattice": lattice_ok}
    return Report(flavor="involutions", passed=passed, lhs=outcome, rhs=True,
                  witness=None if passed else outcome)


def _glattice(instance: Instance) -> Report:
    code, group, op = instance
    return verify_glattice_correspondence(code, group, op if _small_orbits(instance) else None)


def _jacobi(instance: Instance) -> Report:
    code, _group, op = instance
    t = op.partition.t
    return verify_jacobi_correspondence(code, op, JacobiSet(t=t, places=(1,) if t else ()),
                                        cutoff=min(4, get_config().sweep.theta_cutoff))


CheckFn = Callable[[Instance], Optional[Report]]

CHECKS: Dict[str, CheckFn] = {
    "hayden": lambda inst: verify_hayden(inst[0], inst[2]),
    "orbit-matrix": lambda inst: verify_orbit_matrix(inst[0], inst[2]),
    "mw-hamming": lambda inst: check_identity("hamming", inst[0], inst[2], cross_validate=True),
    "mw-cwe": lambda inst: check_identity("cwe", inst[0], inst[2]),
    "mw-cwe_g": lambda inst: check_identity("cwe_g", inst[0], inst[2], genus=2) if _cweg_fits(inst) else None,
    "mw-harmonic": lambda inst: check_identity(
        "harmonic", inst[0], inst[2], harmonic_degree=get_config().sweep.harmonic_max_degree),
    "mw-jacobi": lambda inst: check_identity("jacobi", inst[0], inst[2]),
    "harmonic-structure": check_harmonic_structure,
    "construction-a": check_construction_a,
    "involutions": check_involutions,
    "glattice": _glattice,
    "theta": lambda inst: verify_theta_correspondence(
        inst[0], inst[2], genus=1, cutoff=get_config().sweep.theta_cutoff) if _small_orbits(inst) else None,
    "jacobi-theta": lambda inst: _jacobi(inst) if _small_orbits(inst) else None,
}


def run_sweep(check: str, count: Optional[int] = None, seed: int = 0,
              progress: Optional[Callable[[int, Report], None]] = None) -> SweepSummary:
    """
    Run `check` until `count` random instances have been checked.

    Moduli cycle through the configured list. Skipped draws do not count
    toward `count`; after ``count * max_draws_factor`` draws the sweep stops
    short and logs a warning.
    """
    if check not in CHECKS:
        raise ValueError(f"unknown check {check!r}; expected one of {sorted(CHECKS)}")
    settings = get_config().sweep
    if count is None:
        count = settings.flavor_instances if check.startswith("mw-") else settings.instances
    rng = random.Random(seed)
    metrics = SweepMetrics()
    metrics.start_tracking()
    logger.info(f"Starting {check} sweep: {count} instances, seed {seed}")

    max_draws = count * settings.max_draws_factor
    draws = 0
    while metrics.instances < count and draws < max_draws:
        k = settings.moduli[draws % len(settings.moduli)]
        draws += 1
        n = rng.randint(1, settings.max_length)
        instance = random_instance(rng, k, n)
        started = time.perf_counter()
        try:
            report = CHECKS[check](instance)
        except EquicodeError as e:
            report = Report(flavor=check, passed=False, witness={"error": f"{type(e).__name__}: {e}"})
        metrics.record(k, report, time.perf_counter() - started, instance)
        if report is None:
            continue
        if progress is not None:
            progress(metrics.instances - 1, report)
        if metrics.instances % 50 == 0:
            logger.info(f"{check}: {metrics.instances}/{count} instances, {metrics.passed} passed")

    if metrics.instances < count:
        logger.warning(f"{check}: only {metrics.instances}/{count} instances checked after {draws} draws")

    logger.info(f"{check} sweep finished: {metrics.passed}/{metrics.instances} passed, {metrics.skipped} skipped")
    return SweepSummary(
        check=check,
        seed=seed,
        requested=count,
        instances=metrics.instances,
        passed=metrics.passed,
        skipped=metrics.skipped,
        elapsed_seconds=metrics.elapsed(),
        per_modulus=dict(sorted(metrics.per_modulus.items())),
        first_failure=metrics.first_failure,
    )


__all__ = ["CHECKS", "FLAVORS", "SweepMetrics", "random_instance", "random_overgroup", "random_subgroup", "run_sweep"]
