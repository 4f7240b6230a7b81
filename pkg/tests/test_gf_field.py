"""
Tests for Galois Field Arithmetic
=================================
Table construction, element operations and parameter validation.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from config.fields import FIELD_PRESETS
from modules.errors import FieldDomainError, FieldParameterError, ReducibleFieldPolynomialError
from modules.gf.field import (
    build_field,
    carryless_mul,
    field_for_order,
    find_factor,
    gf_add,
    gf_inv,
    gf_mul,
)

pytestmark = [pytest.mark.unit, pytest.mark.gf]


class TestBuildField:
    """Tests for field construction."""

    @pytest.mark.parametrize("r", range(1, 9))
    def test_log_antilog_consistent(self, r):
        """antilog[log[x]] == x for every nonzero x."""
        ctx = build_field(r)
        x = np.arange(1, ctx.q)
        assert ctx.q == 2 ** r
        assert np.array_equal(ctx.antilog_table[ctx.log_table[x]], x)

    @pytest.mark.parametrize("r", range(1, 9))
    def test_mul_table_matches_reference(self, r):
        """Every table product equals the shift-and-add product."""
        ctx = build_field(r)
        for a in range(ctx.q):
            expected = [carryless_mul(a, b, ctx.poly, r) for b in range(ctx.q)]
            assert list(ctx.mul_table[a]) == expected

    def test_known_product(self):
        """0x02 * 0x80 reduces by 0x11D to 0x1D."""
        ctx = build_field(8)
        assert carryless_mul(0x02, 0x80, 0x11D, 8) == 0x1D
        assert gf_mul(ctx, 0x02, 0x80) == 0x1D

    def test_presets_are_irreducible(self):
        """Every preset polynomial is accepted."""
        for r, preset in FIELD_PRESETS.items():
            assert find_factor(preset.poly) is None
            assert build_field(r).poly == preset.poly

    def test_non_primitive_irreducible_poly(self):
        """x^4+x^3+x^2+x+1 is irreducible but x is not a generator."""
        ctx = build_field(4, 0x1F)
        assert ctx.generator != 2
        for a in range(16):
            assert list(ctx.mul_table[a]) == [carryless_mul(a, b, 0x1F, 4) for b in range(16)]

    def test_cached(self):
        assert build_field(8) is build_field(8)

    def test_tables_read_only(self):
        ctx = build_field(4)
        with pytest.raises(ValueError):
            ctx.mul_table[1, 1] = 0


class TestFieldValidation:
    """Tests for rejected parameters."""

    def test_reducible_polynomial(self):
        with pytest.raises(ReducibleFieldPolynomialError) as exc_info:
            build_field(8, 0x101)
        assert "E001" in str(exc_info.value)

    def test_degree_out_of_range(self):
        with pytest.raises(FieldParameterError):
            build_field(9)
        with pytest.raises(FieldParameterError):
            build_field(0)

    def test_degree_mismatch(self):
        with pytest.raises(FieldParameterError):
            build_field(8, 0x13)

    def test_zero_constant_term(self):
        with pytest.raises(FieldParameterError):
            build_field(4, 0x12)

    def test_order_not_power_of_two(self):
        with pytest.raises(FieldParameterError):
            field_for_order(6)

    def test_field_for_order(self):
        assert field_for_order(256).r == 8


class TestElementOperations:
    """Tests for add, mul and inv."""

    def test_add_is_xor(self):
        assert gf_add(0b1010, 0b0110) == 0b1100

    def test_scalar_results_are_int(self):
        ctx = build_field(8)
        assert isinstance(gf_mul(ctx, 3, 7), int)
        assert isinstance(gf_inv(ctx, 3), int)

    def test_inverse(self):
        ctx = build_field(8)
        a = np.arange(1, 256)
        assert np.all(ctx.mul_table[a, gf_inv(ctx, a)] == 1)

    def test_inverse_of_zero(self):
        ctx = build_field(8)
        with pytest.raises(FieldDomainError):
            gf_inv(ctx, 0)
        with pytest.raises(FieldDomainError):
            ctx.inv(np.array([1, 0, 3]))

    def test_array_mul(self):
        ctx = build_field(4)
        a = np.array([0, 1, 2, 3])
        assert np.array_equal(ctx.mul(a, 1), a)
        assert np.array_equal(ctx.mul(a, 0), np.zeros(4))


class TestFieldProperties:
    """Property-based tests of the field axioms."""

    pytestmark = pytest.mark.property

    @given(
        st.integers(0, 255),
        st.integers(0, 255),
        st.integers(0, 255),
    )
    def test_distributive(self, a, b, c):
        ctx = build_field(8)
        assert gf_mul(ctx, a, b ^ c) == gf_mul(ctx, a, b) ^ gf_mul(ctx, a, c)

    @given(
        st.integers(0, 255),
        st.integers(0, 255),
        st.integers(0, 255),
    )
    def test_associative(self, a, b, c):
        ctx = build_field(8)
        assert gf_mul(ctx, gf_mul(ctx, a, b), c) == gf_mul(ctx, a, gf_mul(ctx, b, c))

    @given(st.integers(1, 7), st.data())
    def test_commutative(self, r, data):
        ctx = build_field(r)
        a = data.draw(st.integers(0, ctx.q - 1))
        b = data.draw(st.integers(0, ctx.q - 1))
        assert gf_mul(ctx, a, b) == gf_mul(ctx, b, a)
