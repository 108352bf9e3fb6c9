"""
Tests for the base ring Z_k and its generating character.
"""

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from equicode.errors import NotInvertible
from equicode.frobring import RingZk, char_sum, char_value, inverse


class TestRingZk:
    """Test ring construction and labels."""

    def test_modulus_must_exceed_one(self):
        with pytest.raises(ValidationError):
            RingZk(k=1)

    def test_labels(self):
        assert RingZk(k=3).label == "F_3"
        assert RingZk(k=4).label == "Z_4"
        assert RingZk(k=5).is_field
        assert not RingZk(k=6).is_field

    def test_reduce(self):
        ring = RingZk(k=4)
        assert ring.reduce(-1) == 3
        assert ring.elements() == [0, 1, 2, 3]


class TestCharacter:
    """Test χ(a) = ζ_k^a and its orthogonality."""

    def test_char_value_of_half_turn(self):
        assert char_value(RingZk(k=4), 2) == -1

    def test_char_sum_at_zero(self):
        assert char_sum(RingZk(k=4), 0) == 4

    def test_char_sum_at_zero_divisor(self):
        """Σ_b χ(2b) vanishes over Z_4 even though 2 is not a unit."""
        assert char_sum(RingZk(k=4), 2).is_zero()

    @given(st.integers(2, 12), st.integers(-30, 30))
    def test_orthogonality(self, k, a):
        ring = RingZk(k=k)
        expected = k if a % k == 0 else 0
        assert char_sum(ring, a) == expected


class TestInverse:
    """Test unit inverses modulo k."""

    def test_unit(self):
        assert inverse(RingZk(k=4), 3) == 3
        assert inverse(RingZk(k=7), 3) == 5

    def test_non_unit_raises(self):
        with pytest.raises(NotInvertible):
            inverse(RingZk(k=4), 2)

    @given(st.integers(2, 30), st.integers(1, 100))
    def test_inverse_property(self, k, m):
        ring = RingZk(k=k)
        try:
            inv = inverse(ring, m)
        except NotInvertible:
            return
        assert (inv * m) % k == 1 % k
