"""
Tests for codes, G-codes and the Hayden-operator projections.

Uses the worked Z_4 instance (G = ⟨(1 2 3)(4)⟩) and the ternary instance.
"""

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from equicode.errors import DimensionMismatch, NotOrbitConstant, TooLarge
from equicode.fixtures import Z4_H_DUAL, Z4_PROJECTION, ternary_example, z4_example
from equicode.frobring import RingZk
from equicode.gcode import (
    Code,
    code_span,
    dual,
    format_word,
    g_code_span,
    h_dual,
    h_inner,
    is_g_code,
    orbit_form,
    project_theta,
    scale_by_M,
    verify_hayden,
    verify_orbit_matrix,
)
from equicode.permgrp import hayden, orbit_length_matrix, parse_group


class TestCodes:
    """Test spans, validation and duals."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code, self.group, self.op = z4_example()

    def test_span_size(self):
        assert self.code.size == 16
        assert (1, 1, 3, 1) in self.code
        assert (1, 0, 0, 0) not in self.code

    def test_span_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            code_span(RingZk(k=2), 3, [(1, 0)])

    def test_span_limit(self):
        with pytest.raises(TooLarge):
            code_span(RingZk(k=2), 4, [(1, 0, 0, 0), (0, 1, 0, 0)], max_enum=3)

    def test_codewords_must_be_span(self):
        with pytest.raises(ValidationError):
            Code(ring=RingZk(k=2), n=2, codewords=((0, 0), (1, 0)), generators=((1, 1),))

    def test_dual_size(self):
        """|C|·|^⊥C| = k^n."""
        assert dual(self.code).size == 16

    def test_self_dual(self):
        """Every pair of generators is orthogonal mod 4, and the sizes match."""
        assert dual(self.code).word_set == self.code.word_set

    def test_dual_guard(self):
        with pytest.raises(TooLarge):
            dual(self.code, max_enum=10)

    def test_double_dual(self):
        code, _group, _op = ternary_example()
        assert dual(dual(code)).word_set == code.word_set

    def test_format_word(self):
        assert format_word((1, 1, 1, 3), 4) == "1113"
        assert format_word((1, 10), 11) == "1,10"


class TestGCodes:
    """Test G-invariance."""

    def test_z4_code_is_g_code(self):
        code, group, _op = z4_example()
        assert is_g_code(code, group)

    def test_non_invariant_code(self):
        code = code_span(RingZk(k=2), 2, [(1, 0)])
        assert not is_g_code(code, parse_group(2, ["(1 2)"]))

    def test_g_code_span(self):
        group = parse_group(3, ["(1 2 3)"])
        code = g_code_span(RingZk(k=2), 3, [(1, 0, 0)], group)
        assert code.size == 8
        assert is_g_code(code, group)

    def test_degree_mismatch(self):
        code, _group, _op = z4_example()
        with pytest.raises(DimensionMismatch):
            is_g_code(code, parse_group(3, ["(1 2)"]))


class TestProjection:
    """Test Cθ_H, orbit coordinates and the H-dual."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code, self.group, self.op = z4_example()
        self.projected = project_theta(self.code, self.op)

    def test_projection_words(self):
        expanded = [format_word(w, 4) for w in self.projected.expanded()]
        assert expanded == Z4_PROJECTION

    def test_projection_orbit_coordinates(self):
        assert self.projected.words == ((0, 0), (1, 3), (2, 2), (3, 1))
        assert self.projected.t == 2

    def test_h_dual(self):
        dual_h = h_dual(self.projected)
        assert [format_word(w, 4) for w in dual_h.expanded()] == Z4_H_DUAL

    def test_h_inner(self):
        assert h_inner((1, 3), (1, 1), 4) == 0
        assert h_inner((1, 3), (1, 0), 4) == 1

    def test_orbit_form(self):
        assert orbit_form((2, 2, 2, 1), self.op.partition) == (2, 1)
        with pytest.raises(NotOrbitConstant):
            orbit_form((1, 2, 3, 0), self.op.partition)

    def test_scale_by_M_matches_h_dual(self):
        """(^⊥C θ_H)M_H equals the H-dual of Cθ_H."""
        scaled = scale_by_M(project_theta(dual(self.code), self.op), orbit_length_matrix(self.op.partition))
        assert scaled.word_set == h_dual(self.projected).word_set

    def test_mismatched_operator(self):
        other = hayden(RingZk(k=4), parse_group(3, ["(1 2 3)"]))
        assert other.n == 3
        with pytest.raises(DimensionMismatch):
            project_theta(self.code, other)


class TestDecompositionChecks:
    """Test the Hayden decomposition and orbit-length identity reports."""

    def test_hayden_z4(self):
        code, _group, op = z4_example()
        report = verify_hayden(code, op)
        assert report.passed
        assert report.details["direct"]
        assert report.details["kernel_size"] == 16
        assert report.witness is None

    def test_orbit_matrix_z4(self):
        code, _group, op = z4_example()
        report = verify_orbit_matrix(code, op)
        assert report.passed
        assert report.details["orbit_lengths"] == [3, 1]

    def test_ternary_counterexample(self):
        """A code that is not H-invariant breaks both identities."""
        code, group, op = ternary_example()
        assert not is_g_code(code, group)
        assert not verify_hayden(code, op).passed
        assert not verify_orbit_matrix(code, op).passed

    @settings(max_examples=25, deadline=None)
    @given(
        st.sampled_from([3, 5, 7]),
        st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=2),
    )
    def test_random_g_codes_with_involution(self, k, gens):
        """Every G-code over Z_k with k odd satisfies both checks for G = ⟨(1 2)(3 4)⟩."""
        ring = RingZk(k=k)
        group = parse_group(4, ["(1 2)(3 4)"])
        op = hayden(ring, group)
        code = g_code_span(ring, 4, gens, group)
        assert verify_hayden(code, op).passed
        assert verify_orbit_matrix(code, op).passed


class TestProperSubgroup:
    """H = ⟨(1 2)⟩ strictly inside G = S_4, acting on the sum-zero code."""

    @pytest.mark.parametrize("k", [3, 5, 7])
    def test_structural_checks(self, k):
        ring = RingZk(k=k)
        group = parse_group(4, ["(1 2 3 4)", "(1 2)"])
        code = g_code_span(ring, 4, [(1, k - 1, 0, 0)], group)
        op = hayden(ring, parse_group(4, ["(1 2)"]))
        assert group.order == 24
        assert op.group.order == 2
        assert code.size == k ** 3
        assert verify_hayden(code, op).passed
        assert verify_orbit_matrix(code, op).passed
