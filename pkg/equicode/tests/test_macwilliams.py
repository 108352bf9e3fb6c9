"""
Tests for the MacWilliams transforms and the identity checks built on them.
"""

import pytest
from hypothesis import given, settings, strategies as st

from equicode.enumerators import JacobiSet, cwe_g, cwe_h, h_weight_enum
from equicode.errors import DimensionMismatch, NonIntegerResult
from equicode.fixtures import ternary_example, z4_example
from equicode.frobring import RingZk
from equicode.gcode import code_span, g_code_span, h_dual, project_theta
from equicode.harmonic import HarmonicFn
from equicode.macwilliams import (
    FLAVORS,
    check_identity,
    default_harmonic,
    mw_cwe,
    mw_cwe_g,
    mw_hamming,
)
from equicode.permgrp import hayden, parse_group
from equicode.polyring import BivarPoly, specialize_cwe


class TestTransforms:
    """Test the transforms on small classical codes."""

    def test_repetition_code(self):
        """Binary repetition code of length 3: x³ + y³ ↦ x³ + 3xy²."""
        result = mw_hamming(BivarPoly(3, {0: 1, 3: 1}), RingZk(k=2), 2)
        assert result == BivarPoly(3, {0: 1, 2: 3})

    def test_non_integer_result(self):
        with pytest.raises(NonIntegerResult):
            mw_hamming(BivarPoly(1, {0: 1}), RingZk(k=2), 2)

    def test_double_transform_is_identity(self):
        code, _group, op = z4_example()
        d = project_theta(code, op)
        ring = code.ring
        once = mw_cwe(cwe_h(d), ring, d.size)
        twice = mw_cwe(once, ring, h_dual(d).size)
        assert twice == cwe_h(d)

    def test_family_mismatch(self):
        code, _group, op = z4_example()
        d = project_theta(code, op)
        with pytest.raises(DimensionMismatch):
            mw_cwe_g(cwe_h(d), code.ring, 2, d.size)
        with pytest.raises(DimensionMismatch):
            mw_cwe(cwe_g(d, 2), code.ring, d.size)

    def test_default_harmonic_falls_back(self):
        """Harm_2(3) is empty, so degree 2 falls back to degree 1."""
        assert default_harmonic(3, 2).d == 1
        assert default_harmonic(1, 1).d == 0


class TestCheckIdentity:
    """Test every flavor on the worked instances."""

    @pytest.mark.parametrize("flavor", FLAVORS)
    def test_z4_instance(self, flavor):
        code, _group, op = z4_example()
        report = check_identity(flavor, code, op, cross_validate=True)
        assert report.passed, report.witness
        assert report.details["cross_validation"]

    @pytest.mark.parametrize("flavor", FLAVORS)
    def test_ternary_instance(self, flavor):
        """The MacWilliams checks hold even though the ternary code is not a G-code."""
        code, _group, op = ternary_example()
        assert check_identity(flavor, code, op).passed

    def test_ternary_cross_validation_fails(self):
        """(^⊥C)θ_H M_H only equals the H-dual for G-codes."""
        code, _group, op = ternary_example()
        report = check_identity("hamming", code, op, cross_validate=True)
        assert not report.passed
        assert report.details["cross_validation"] is False
        assert report.witness == {"cross_validation": False}

    def test_hamming_values(self):
        code, _group, op = z4_example()
        report = check_identity("hamming", code, op)
        assert report.lhs == "x^2 + 3*y^2"
        assert report.rhs == h_weight_enum(h_dual(project_theta(code, op))).to_text() == "x^2 + 3*y^2"

    def test_explicit_harmonic_and_jacobi_set(self):
        code, _group, op = z4_example()
        f = HarmonicFn(t=2, d=1, values={(1,): 1, (2,): -1})
        assert check_identity("harmonic", code, op, harmonic=f).passed
        for places in [(), (2,), (1, 2)]:
            report = check_identity("jacobi", code, op, jacobi_set=JacobiSet(t=2, places=places))
            assert report.passed
            assert report.details["jacobi_set"] == list(places)

    def test_genus_three(self):
        code, _group, op = ternary_example()
        assert check_identity("cwe_g", code, op, genus=3).passed

    def test_unknown_flavor(self):
        code, _group, op = z4_example()
        with pytest.raises(ValueError):
            check_identity("shape", code, op)

    @settings(max_examples=20, deadline=None)
    @given(
        st.sampled_from([2, 3, 4, 5]),
        st.integers(1, 4),
        st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=2),
    )
    def test_random_codes_trivial_group(self, k, n, gens):
        """With H trivial every flavor reduces to the classical identity."""
        ring = RingZk(k=k)
        group = parse_group(n, [])
        op = hayden(ring, group)
        code = code_span(ring, n, [g[:n] for g in gens])
        for flavor in ("hamming", "cwe", "harmonic", "jacobi"):
            assert check_identity(flavor, code, op).passed

    @settings(max_examples=15, deadline=None)
    @given(
        st.sampled_from([2, 4, 5]),
        st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=2),
    )
    def test_random_g_codes(self, k, gens):
        """G = ⟨(1 2 3)⟩ has order 3, invertible mod 2, 4 and 5."""
        ring = RingZk(k=k)
        group = parse_group(4, ["(1 2 3)"])
        op = hayden(ring, group)
        code = g_code_span(ring, 4, gens, group)
        for flavor in ("hamming", "cwe", "jacobi"):
            assert check_identity(flavor, code, op, cross_validate=True).passed


def _sum_zero_code(k):
    """Sum-zero code of length 4 with G = S_4 and H = ⟨(1 2)⟩."""
    ring = RingZk(k=k)
    group = parse_group(4, ["(1 2 3 4)", "(1 2)"])
    code = g_code_span(ring, 4, [(1, k - 1, 0, 0)], group)
    return code, group, hayden(ring, parse_group(4, ["(1 2)"]))


class TestSpecialization:
    """Setting x_0 = x and x_a = y turns the complete transform into the Hamming one."""

    def _assert_commutes(self, code, op):
        d = project_theta(code, op)
        p = cwe_h(d)
        assert specialize_cwe(p) == h_weight_enum(d)
        lhs = specialize_cwe(mw_cwe(p, code.ring, d.size))
        rhs = mw_hamming(specialize_cwe(p), code.ring, d.size)
        assert lhs == rhs

    @pytest.mark.parametrize("example", [z4_example, ternary_example])
    def test_worked_instances(self, example):
        code, _group, op = example()
        self._assert_commutes(code, op)

    def test_subgroup_strictly_inside_group(self):
        code, _group, op = _sum_zero_code(5)
        self._assert_commutes(code, op)

    @settings(max_examples=15, deadline=None)
    @given(
        st.sampled_from([2, 4, 5]),
        st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=2),
    )
    def test_random_g_codes(self, k, gens):
        ring = RingZk(k=k)
        group = parse_group(4, ["(1 2 3)"])
        self._assert_commutes(g_code_span(ring, 4, gens, group), hayden(ring, group))


class TestProperSubgroup:
    """Every flavor with H a proper subgroup of G."""

    @pytest.mark.parametrize("flavor", FLAVORS)
    def test_sum_zero_code(self, flavor):
        code, group, op = _sum_zero_code(3)
        assert op.group.order < group.order
        report = check_identity(flavor, code, op, cross_validate=True)
        assert report.passed, report.witness
        assert report.details["cross_validation"]
