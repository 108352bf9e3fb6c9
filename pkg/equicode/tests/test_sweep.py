"""
Tests for the randomized verification sweep.

Most counts are kept small. The MacWilliams flavors also run once at the
configured instance count.
"""

import random

import pytest

from equicode.config import get_config
from equicode.gcode import is_g_code
from equicode.macwilliams import FLAVORS
from equicode.models import Report
from equicode.sweep import CHECKS, SweepMetrics, random_instance, random_overgroup, random_subgroup, run_sweep


class TestInstances:
    """Test random instance generation."""

    def test_subgroup_order(self):
        group = random_subgroup(4, 2, random.Random(3))
        assert group.order == 2

    def test_subgroup_too_small_for_cycle(self):
        group = random_subgroup(2, 3, random.Random(0))
        assert group.is_trivial()

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_instance_is_g_code(self, k):
        code, group, op = random_instance(random.Random(k), k, 4)
        assert code.ring.k == k
        assert is_g_code(code, group)
        assert all(h in group.elements for h in op.group.elements)

    def test_coprime_order(self):
        for seed in range(10):
            _code, _group, op = random_instance(random.Random(seed), 4, 5)
            assert op.group.order % 2 == 1

    def test_reproducible(self):
        a = random_instance(random.Random(11), 5, 4)
        b = random_instance(random.Random(11), 5, 4)
        assert a[0].word_set == b[0].word_set
        assert a[1].elements == b[1].elements

    def test_overgroup_contains_subgroup(self):
        subgroup = random_subgroup(4, 3, random.Random(5))
        group = random_overgroup(subgroup, random.Random(5))
        assert group.order % subgroup.order == 0
        assert group.order > subgroup.order
        assert all(h in group.elements for h in subgroup.elements)

    def test_some_subgroups_are_proper(self):
        instances = [random_instance(random.Random(seed), 5, 4) for seed in range(20)]
        assert any(group.order > op.group.order for _code, group, op in instances)
        assert any(group.order == op.group.order for _code, group, op in instances)


class TestRunSweep:
    """Test the sweep driver."""

    def test_hayden_sweep(self):
        summary = run_sweep("hayden", count=5, seed=1)
        assert summary.instances == 5
        assert summary.all_passed
        assert summary.per_modulus == {2: 1, 3: 1, 4: 1, 5: 1, 6: 1}

    def test_construction_a_sweep(self):
        summary = run_sweep("construction-a", count=5, seed=2)
        assert summary.all_passed
        assert summary.first_failure is None

    def test_mw_sweep(self):
        summary = run_sweep("mw-hamming", count=3, seed=0)
        assert summary.all_passed

    def test_same_seed_same_outcome(self):
        a = run_sweep("orbit-matrix", count=4, seed=9)
        b = run_sweep("orbit-matrix", count=4, seed=9)
        assert (a.passed, a.skipped, a.per_modulus) == (b.passed, b.skipped, b.per_modulus)

    def test_progress_callback(self):
        seen = []
        run_sweep("construction-a", count=3, seed=0, progress=lambda i, r: seen.append(i))
        assert seen == [0, 1, 2]

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            run_sweep("no-such-check", count=1)

    def test_skipped_draws_do_not_count(self):
        summary = run_sweep("mw-cwe_g", count=10, seed=1)
        assert summary.instances == summary.requested == 10
        assert summary.all_passed

    def test_gives_up_after_max_draws(self, monkeypatch):
        monkeypatch.setitem(CHECKS, "hayden", lambda instance: None)
        summary = run_sweep("hayden", count=2, seed=0)
        assert summary.instances == 0
        assert summary.skipped == 2 * get_config().sweep.max_draws_factor

    def test_registry(self):
        for name in ("hayden", "orbit-matrix", "mw-jacobi", "theta", "glattice"):
            assert name in CHECKS


class TestSweepMetrics:
    """Test pass/skip bookkeeping."""

    def setup_method(self):
        self.metrics = SweepMetrics()
        self.metrics.start_tracking()
        self.instance = random_instance(random.Random(0), 3, 3)

    def test_skip(self):
        self.metrics.record(3, None, 0.1, self.instance)
        assert self.metrics.skipped == 1
        assert self.metrics.instances == 0

    def test_first_failure_kept(self):
        self.metrics.record(3, Report(flavor="a", passed=False), 0.1, self.instance)
        self.metrics.record(3, Report(flavor="b", passed=False), 0.1, self.instance)
        assert self.metrics.first_failure["report"]["flavor"] == "a"
        assert self.metrics.first_failure["modulus"] == 3

    def test_summary(self):
        self.metrics.record(3, Report(flavor="a", passed=True), 0.5, self.instance)
        summary = self.metrics.get_summary()
        assert summary["passed"] == 1
        assert summary["average_instance_time"] == 0.5
        assert self.metrics.per_modulus == {3: 1}


class TestFlavorSweeps:
    """Every MacWilliams flavor at the configured instance count."""

    @pytest.mark.parametrize("flavor", FLAVORS)
    def test_checked_instances_per_flavor(self, flavor):
        summary = run_sweep(f"mw-{flavor}", seed=0)
        assert summary.requested == get_config().sweep.flavor_instances
        assert summary.instances == summary.requested
        assert summary.all_passed, summary.first_failure
