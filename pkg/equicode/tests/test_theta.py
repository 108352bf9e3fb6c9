"""
Tests for truncated theta series and the theta correspondences.
"""

import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from equicode.enumerators import JacobiSet
from equicode.errors import InvalidCutoff, NonIntegerCoefficient, NotMember
from equicode.fixtures import ternary_example, z4_example
from equicode.frobring import RingZk
from equicode.gcode import code_span, project_theta
from equicode.lattice import (
    Lattice,
    construction_a,
    dual_lattice,
    integer_lattice,
    lambda0,
    orbit_construction_a,
    project_lattice,
)
from equicode.permgrp import hayden, parse_group
from equicode.polyring import MultiPoly, VariableFamily
from equicode.theta import (
    JacobiQSeries,
    QSeries,
    QSeries2,
    check_theta_fa_partition,
    jacobi_formula_check,
    jacobi_theta_lattice,
    phi_a,
    psi_a,
    series_denominator,
    substitute_series,
    theta_fa,
    theta_fa2,
    theta_lattice,
    theta_lattice_genus2,
    verify_jacobi_correspondence,
    verify_theta_correspondence,
)

series_terms = st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=5)


class TestSeriesArithmetic:
    """Test truncated series bookkeeping."""

    def test_square(self):
        s = QSeries(1, {0: 1, 1: 2}, 2)
        assert (s ** 2).terms == {0: 1, 1: 4, 2: 4}

    def test_mixed_denominators(self):
        a = QSeries(2, {1: 1}, 4)
        b = QSeries(1, {1: 1}, 2)
        total = a + b
        assert total.den == 2
        assert total.terms == {1: 1, 2: 1}

    def test_cutoff_drops_terms(self):
        assert QSeries(1, {0: 1, 5: 3}, 2).terms == {0: 1}

    def test_equality_up_to_shared_cutoff(self):
        assert QSeries(1, {0: 1, 3: 7}, 4) == QSeries(1, {0: 1}, 2)
        assert QSeries(1, {0: 1}, 2) != QSeries(1, {0: 2}, 2)

    def test_difference_witness(self):
        assert QSeries(1, {0: 1, 1: 2}, 3).difference(QSeries(1, {0: 1, 1: 3}, 3)) == (1, 2, 3)

    def test_shapes_do_not_mix(self):
        with pytest.raises(TypeError):
            QSeries(1, {0: 1}, 2) + QSeries2(1, {(0, 0, 0): 1}, 2)

    def test_rescale_must_divide(self):
        with pytest.raises(ValueError):
            QSeries(2, {0: 1}, 2).rescaled(3)

    def test_coefficient_at(self):
        s = QSeries(4, {2: 5}, 8)
        assert s.coefficient_at(Fraction(1, 2)) == 5
        assert s.coefficient_at(Fraction(1, 3)) == 0

    def test_text(self):
        assert QSeries(2, {0: 1, 1: 2}, 2).to_text() == "0/2: 1\n1/2: 2"
        assert QSeries(2, {}, 2).to_text() == "0"

    @given(series_terms, series_terms)
    def test_product_commutes(self, a, b):
        s, t = QSeries(1, a, 6), QSeries(1, b, 6)
        assert s * t == t * s

    @given(series_terms, series_terms, series_terms)
    def test_product_distributes(self, a, b, c):
        s, t, u = QSeries(1, a, 6), QSeries(1, b, 6), QSeries(1, c, 6)
        assert s * (t + u) == s * t + s * u


class TestCoordinateThetas:
    """Test f_a, φ_a and ψ_a."""

    def test_binary_f(self):
        ring = RingZk(k=2)
        assert theta_fa(ring, 0, 2).terms == {0: 1, 4: 2}
        assert theta_fa(ring, 1, 2).terms == {1: 2}

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_partition_of_scaled_integers(self, k):
        """Σ_a f_a is the theta series of (1/√k)Z."""
        assert check_theta_fa_partition(RingZk(k=k), 3).passed

    def test_phi_indices(self):
        """φ_1 over Z_3 pairs q^{b²/3} with ζ^b."""
        phi = phi_a(RingZk(k=3), 1, 2)
        assert phi.coefficient((1, 3)) == 1
        assert phi.coefficient((4, -6)) == 1

    def test_psi_forgets_index(self):
        ring = RingZk(k=3)
        assert psi_a(ring, 1, 2).at_zeta_one() == theta_fa(ring, 1, 2)
        assert phi_a(ring, 1, 2).at_zeta_one() == theta_fa(ring, 1, 2)

    def test_genus_two_zero_class(self):
        f = theta_fa2(RingZk(k=2), (0, 0), 2)
        assert f.coefficient((0, 0, 0)) == 1
        assert f.coefficient((4, 0, 0)) == 2


class TestLatticeSeries:
    """Test theta series of lattices."""

    def test_integer_lattice(self):
        theta = theta_lattice(integer_lattice(2), 2)
        assert theta.den == 1
        assert theta.terms == {0: 1, 1: 4, 2: 4}

    def test_two_z(self):
        """2Z has norms (2m)², so 1 + 2q⁴ + 2q¹⁶."""
        theta = theta_lattice(_two_z(), 16)
        assert [theta.coefficient_at(e) for e in (0, 1, 4, 9, 16)] == [1, 0, 2, 0, 2]
        assert sum(theta.terms.values()) == 5

    @pytest.mark.parametrize("cutoff", [-1, "-1/2", Fraction(-3, 4)])
    def test_negative_cutoff(self, cutoff):
        with pytest.raises(InvalidCutoff):
            theta_lattice(integer_lattice(2), cutoff)
        with pytest.raises(InvalidCutoff):
            theta_lattice_genus2(integer_lattice(1), cutoff)
        with pytest.raises(InvalidCutoff):
            theta_fa(RingZk(k=3), 1, cutoff)

    def test_orbit_lattice_of_worked_instance(self):
        """1 + 2q^{1/2} + 4q² up to q²."""
        code, _group, op = z4_example()
        lattice = orbit_construction_a(project_theta(code, op))
        theta = theta_lattice(lattice, 2)
        assert series_denominator(lattice) == 4
        assert theta.coefficient_at(0) == 1
        assert theta.coefficient_at(Fraction(1, 2)) == 2
        assert theta.coefficient_at(1) == 0
        assert theta.coefficient_at(Fraction(3, 2)) == 0
        assert theta.coefficient_at(2) == 4

    def test_genus_two_slot_zeroed(self):
        z = integer_lattice(1)
        assert theta_lattice_genus2(z, 2).slot_zeroed() == theta_lattice(z, 2) ** 2

    def test_jacobi_at_zero_vector(self):
        code, _group, op = z4_example()
        lattice = orbit_construction_a(project_theta(code, op))
        series = jacobi_theta_lattice(lattice, (0, 0), 2)
        assert isinstance(series, JacobiQSeries)
        assert series.at_zeta_one() == theta_lattice(lattice, 2)

    def test_jacobi_reference_must_be_member(self):
        with pytest.raises(NotMember):
            jacobi_theta_lattice(integer_lattice(2), (Fraction(1, 2), 0), 2)


class TestSubstitution:
    """Test substituting series into enumerators."""

    def test_non_integer_coefficient(self):
        ring = RingZk(k=2)
        p = MultiPoly(VariableFamily(k=2), {(1, 0): Fraction(1, 2)})
        with pytest.raises(NonIntegerCoefficient):
            substitute_series(p, [theta_fa(ring, 0, 2), theta_fa(ring, 1, 2)])

    def test_arity_checked(self):
        p = MultiPoly(VariableFamily(k=2), {(1, 0): 1})
        with pytest.raises(ValueError):
            substitute_series(p, [theta_fa(RingZk(k=2), 0, 2)])


class TestCorrespondences:
    """Test the theta and Jacobi correspondences."""

    @pytest.mark.parametrize("genus", [1, 2])
    def test_theta_z4(self, genus):
        code, _group, op = z4_example()
        report = verify_theta_correspondence(code, op, genus=genus)
        assert report.passed, report.witness
        assert report.details["genus"] == genus

    def test_theta_ternary(self):
        code, _group, op = ternary_example()
        assert verify_theta_correspondence(code, op, genus=1, cutoff=4).passed

    @pytest.mark.parametrize("name", ["ternary", "binary-repetition", "z5-pair", "z3-trivial", "z4-trivial"])
    def test_theta_genus_two(self, name):
        code, op = _genus_two_instance(name)
        report = verify_theta_correspondence(code, op, genus=2, cutoff=4)
        assert report.passed, report.witness
        assert report.details["genus"] == 2

    def test_theta_genus_limit(self):
        code, _group, op = z4_example()
        with pytest.raises(ValueError):
            verify_theta_correspondence(code, op, genus=3)

    @pytest.mark.parametrize("places", [(), (1,), (2,), (1, 2)])
    def test_jacobi_z4(self, places):
        code, _group, op = z4_example()
        report = verify_jacobi_correspondence(code, op, JacobiSet(t=2, places=places), cutoff=4)
        assert report.passed, report.witness


class TestJacobiFormula:
    """Test the numeric Jacobi transformation check."""

    def test_z4_lattice(self):
        code, _group, _op = z4_example()
        report = jacobi_formula_check(construction_a(code), 1j)
        assert report.passed
        assert report.details["gram_determinant"] == "1"

    @pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
    def test_scaled_integers(self, y):
        """√3·Z is not unimodular, so the determinant factor matters."""
        lattice = orbit_construction_a(project_theta(*_zero_code()))
        assert jacobi_formula_check(lattice, complex(0, y), tol=1e-8).passed

    def test_integer_lattice(self):
        assert jacobi_formula_check(integer_lattice(3), 2j).passed

    @pytest.mark.parametrize("y", [1.0, 2.0])
    def test_two_z_and_half_z(self, y):
        two_z = _two_z()
        half_z = dual_lattice(two_z)
        assert jacobi_formula_check(two_z, complex(0, y)).passed
        report = jacobi_formula_check(half_z, complex(0, y))
        assert report.passed, report.witness
        assert report.details["gram_determinant"] == "1/4"

    @pytest.mark.parametrize("y", [1.0, 2.0])
    def test_rank_deficient_span_dual(self, y):
        """Z·(1,1) inside R² has rank 1 and Gram determinant 2."""
        diagonal = Lattice(n=2, basis=((Fraction(1), Fraction(1)),))
        report = jacobi_formula_check(diagonal, complex(0, y))
        assert report.passed, report.witness
        assert report.details["rank"] == 1
        assert report.details["gram_determinant"] == "2"

    def test_projected_worked_instance(self):
        code, _group, op = z4_example()
        theta = op.matrix_real
        image = project_lattice(lambda0(construction_a(code), theta), theta)
        report = jacobi_formula_check(image, 2j)
        assert report.passed, report.witness
        assert report.details["rank"] == 2

    def test_rejects_off_axis(self):
        with pytest.raises(ValueError):
            jacobi_formula_check(integer_lattice(1), 1 + 1j)


def _zero_code():
    """The zero code of length 1 over F_3 with the trivial group."""
    ring = RingZk(k=3)
    return code_span(ring, 1, [(0,)]), hayden(ring, parse_group(1, []))


def _two_z():
    """Construction A of the zero code of length 1 over Z_4, which is 2Z."""
    return construction_a(code_span(RingZk(k=4), 1, [(0,)]))


def _genus_two_instance(name):
    if name == "ternary":
        code, _group, op = ternary_example()
        return code, op
    k, n, gens, cycles = {
        "binary-repetition": (2, 3, [(1, 1, 1)], ["(1 2 3)"]),
        "z5-pair": (5, 2, [(1, 1)], ["(1 2)"]),
        "z3-trivial": (3, 2, [(1, 2)], []),
        "z4-trivial": (4, 2, [(1, 1), (0, 2)], []),
    }[name]
    ring = RingZk(k=k)
    return code_span(ring, n, gens), hayden(ring, parse_group(n, cycles))
