"""
Tests for lattices, Construction A and the code/lattice correspondences.
"""

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from equicode.errors import DimensionMismatch, NotDiscrete
from equicode.fixtures import z4_example
from equicode.frobring import RingZk
from equicode.gcode import code_span, g_code_span, project_theta
from equicode.lattice import (
    Lattice,
    construction_a,
    construction_a_member,
    dual_lattice,
    enumerate_short,
    from_basis,
    integer_lattice,
    is_g_lattice,
    lambda0,
    orbit_construction_a,
    project_lattice,
    verify_glattice_correspondence,
    verify_lattice_hayden,
)
from equicode.permgrp import hayden, parse_group


def _identity(n):
    return [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]


class TestLattice:
    """Test the Lattice record and its queries."""

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValidationError):
            Lattice(n=2, basis=((Fraction(1), Fraction(0)), (Fraction(2), Fraction(0))))

    def test_row_length_checked(self):
        with pytest.raises(ValidationError):
            Lattice(n=2, basis=((Fraction(1),),))

    def test_integer_lattice(self):
        z2 = integer_lattice(2)
        assert z2.rank == 2
        assert z2.gram_determinant() == 1
        assert z2.is_integral()
        assert not z2.is_even()

    def test_scaled_equality(self):
        """Z stored with scale 1 equals 2Z stored with scale 1/√4."""
        assert integer_lattice(1) == from_basis([[2]], k_scale=4)
        assert integer_lattice(1) != from_basis([[1]], k_scale=4)
        assert integer_lattice(1) != from_basis([[1]], k_scale=2)

    def test_hnf_equality(self):
        assert from_basis([[1, 1], [0, 2]]) == from_basis([[1, -1], [1, 1]])

    def test_rescale_requires_square_ratio(self):
        with pytest.raises(ValueError):
            integer_lattice(1).rescaled(2)

    def test_contains(self):
        lattice = from_basis([[1, 1], [0, 2]])
        assert lattice.contains((3, 1))
        assert not lattice.contains((1, 0))

    def test_to_json(self):
        data = from_basis([[2, 0], [0, 2]], k_scale=4).to_json()
        assert data == {"k_scale": 4, "basis": [["2", "0"], ["0", "2"]]}


class TestShortVectors:
    """Test exact Fincke-Pohst enumeration."""

    def test_one_dimensional(self):
        vectors = sorted(c for c, _q in enumerate_short([[1]], Fraction(4)))
        assert vectors == [(-2,), (-1,), (0,), (1,), (2,)]

    def test_norms_reported(self):
        norms = sorted(q for _c, q in enumerate_short([[2, 1], [1, 2]], Fraction(2)))
        assert norms == [0, 2, 2, 2, 2, 2, 2]

    def test_not_positive_definite(self):
        with pytest.raises(ValueError):
            list(enumerate_short([[1, 2], [2, 1]], Fraction(1)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 4), st.integers(-3, 3), st.integers(1, 4), st.integers(0, 12))
    def test_matches_brute_force(self, a, b, c, bound):
        """Compare against a box search for the form with basis (a, b), (0, c)."""
        lattice = from_basis([[a, b], [0, c]])
        gram = lattice.gram()
        found = {coeffs for coeffs, _q in enumerate_short(gram, Fraction(bound))}
        expected = set()
        for x in range(-15, 16):
            for y in range(-15, 16):
                norm = gram[0][0] * x * x + 2 * gram[0][1] * x * y + gram[1][1] * y * y
                if norm <= bound:
                    expected.add((x, y))
        assert found == expected


class TestConstructionA:
    """Test Construction A on the worked instance."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code, self.group, self.op = z4_example()
        self.lattice = construction_a(self.code)

    def test_unimodular(self):
        """A self-dual code gives a unimodular integral lattice."""
        assert self.lattice.gram_determinant() == 1
        assert self.lattice.is_integral()
        assert not self.lattice.is_even()
        assert dual_lattice(self.lattice) == self.lattice

    def test_membership(self):
        assert self.lattice.contains((1, 1, 1, 3))
        assert self.lattice.contains((4, 0, 0, 0))
        assert not self.lattice.contains((1, 0, 0, 0))
        assert construction_a_member(self.code, (5, 1, -3, 3))

    def test_norm_one_vectors(self):
        """(1,1,1,-1)/2 has norm 1."""
        norms = [q for _vec, q in self.lattice.vectors_in_ball(1)]
        assert Fraction(1) in norms

    def test_determinant_formula(self):
        """det Gram = k^n / |C|² for codes of every size."""
        ring = RingZk(k=3)
        code = code_span(ring, 3, [(1, 2, 0)])
        assert construction_a(code).gram_determinant() == Fraction(27, 9)

    def test_orbit_lattice(self):
        orbit = orbit_construction_a(project_theta(self.code, self.op))
        assert orbit.n == 2
        assert orbit.gram_determinant() == Fraction(4 ** 2, 4 ** 2)

    def test_double_dual(self):
        code = code_span(RingZk(k=6), 3, [(1, 2, 3)])
        lattice = construction_a(code)
        assert dual_lattice(dual_lattice(lattice)) == lattice

    def test_two_z_and_its_dual(self):
        """The zero code of length 1 over Z_4 gives 2Z, whose dual is (1/2)Z."""
        lattice = construction_a(code_span(RingZk(k=4), 1, [(0,)]))
        assert lattice.k_scale == 4
        assert lattice.gram() == [(Fraction(4),)]
        dual = dual_lattice(lattice)
        assert dual.gram() == [(Fraction(1, 4),)]
        assert dual.contains((1,))
        assert not lattice.contains((1,))
        assert dual_lattice(dual) == lattice


class TestGLattices:
    """Test G-lattices, Λ₀ and projections."""

    def setup_method(self):
        """Set up test fixtures."""
        self.code, self.group, self.op = z4_example()
        self.lattice = construction_a(self.code)

    def test_z4_is_g_lattice(self):
        assert is_g_lattice(self.lattice, self.group)

    def test_negative_instance(self):
        code = code_span(RingZk(k=2), 2, [(1, 0)])
        group = parse_group(2, ["(1 2)"])
        assert not is_g_lattice(construction_a(code), group)
        report = verify_glattice_correspondence(code, group)
        assert report.passed
        assert report.lhs is False and report.rhs is False

    def test_degree_mismatch(self):
        with pytest.raises(DimensionMismatch):
            is_g_lattice(self.lattice, parse_group(3, ["(1 2)"]))

    def test_lambda0_contains_kernel_and_fixed_vectors(self):
        l0 = lambda0(self.lattice, self.op.matrix_real)
        assert l0.rank == 4
        assert l0.contains((4, -4, 0, 0))
        for row in l0.basis:
            assert self.lattice.contains(row)
            assert self.lattice.contains(self.op.apply_real(row))

    def test_lambda0_needs_full_rank(self):
        half = Lattice(n=2, basis=((Fraction(1), Fraction(0)),))
        with pytest.raises(DimensionMismatch):
            lambda0(half, _identity(2))

    def test_project_rank_mismatch(self):
        half = Lattice(n=2, basis=((Fraction(1), Fraction(0)),))
        with pytest.raises(NotDiscrete):
            project_lattice(half, _identity(2))

    def test_projection_rank(self):
        image = project_lattice(lambda0(self.lattice, self.op.matrix_real), self.op.matrix_real)
        assert image.rank == 2

    def test_lattice_hayden(self):
        report = verify_lattice_hayden(self.lattice, self.op.matrix_real, self.op.partition)
        assert report.passed
        assert report.details["rank"] == 2
        assert report.details["kernel_dimension"] == 2

    def test_correspondence_with_ball(self):
        report = verify_glattice_correspondence(self.code, self.group, self.op, radius=4)
        assert report.passed
        assert report.details["ball_equal"]
        assert report.details["ball_size"] >= 3

    @settings(max_examples=10, deadline=None)
    @given(
        st.sampled_from([2, 3, 5]),
        st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=2),
    )
    def test_random_g_codes(self, k, gens):
        group = parse_group(4, ["(1 2)(3 4)"] if k % 2 else ["(1 2 3)"])
        ring = RingZk(k=k)
        code = g_code_span(ring, 4, gens, group)
        op = hayden(ring, group)
        assert verify_glattice_correspondence(code, group, op, radius=3).passed
        assert verify_lattice_hayden(construction_a(code), op.matrix_real, op.partition).passed

    def test_subgroup_strictly_inside_group(self):
        """G = S_4 on the sum-zero code over Z_3 with θ_H for H = ⟨(1 2)⟩."""
        ring = RingZk(k=3)
        group = parse_group(4, ["(1 2 3 4)", "(1 2)"])
        code = g_code_span(ring, 4, [(1, 2, 0, 0)], group)
        op = hayden(ring, parse_group(4, ["(1 2)"]))
        report = verify_glattice_correspondence(code, group, op, radius=3)
        assert report.passed, report.witness
        assert report.details["is_g_lattice"]
        assert verify_lattice_hayden(construction_a(code), op.matrix_real, op.partition).passed
