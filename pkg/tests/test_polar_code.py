"""
Tests for Code Specification and Encoding
=========================================
"""

import numpy as np
import pytest

from modules.code.polar import (
    butterfly_encode,
    encode,
    encode_dense,
    gf_matmul,
    gf_matrix_inverse,
    kernel_matrix,
    kronecker_power,
)
from modules.code.spec import CodeSpec
from modules.errors import CodeParameterError, FieldParameterError, FrozenValueError
from modules.gf.field import build_field
from modules.llrv.transform import KernelCoeffs

pytestmark = [pytest.mark.unit, pytest.mark.code]


class TestCodeSpec:
    """Tests for code parameter validation and message placement."""

    def test_properties(self, toy_code):
        assert toy_code.n == 3
        assert toy_code.q == 4
        assert toy_code.rate == pytest.approx(3 / 8)
        assert list(toy_code.free_indices) == [5, 6, 7]
        assert list(toy_code.frozen_indices) == [0, 1, 2, 3, 4]

    def test_length_not_power_of_two(self, gf4):
        with pytest.raises(CodeParameterError):
            CodeSpec.from_frozen(6, gf4, KernelCoeffs(2, 1), {0: 0})

    def test_length_one(self, gf4):
        with pytest.raises(CodeParameterError):
            CodeSpec.from_frozen(1, gf4, KernelCoeffs(2, 1), {})

    def test_frozen_count_mismatch(self, gf4):
        with pytest.raises(CodeParameterError):
            CodeSpec(N=4, K=1, field=gf4, kernel=KernelCoeffs(2, 1),
                     frozen_mask=np.array([True, False, False, False]), frozen_values=np.zeros(4))

    def test_frozen_value_outside_field(self, gf4):
        with pytest.raises(CodeParameterError):
            CodeSpec.from_frozen(4, gf4, KernelCoeffs(2, 1), {0: 4})

    def test_frozen_index_outside_code(self, gf4):
        with pytest.raises(CodeParameterError):
            CodeSpec.from_frozen(4, gf4, KernelCoeffs(2, 1), {7: 0})

    def test_invalid_kernel(self, gf4):
        with pytest.raises(FieldParameterError):
            CodeSpec.from_frozen(4, gf4, KernelCoeffs(0, 1), {0: 0})

    def test_place_and_extract(self, toy_code):
        u = toy_code.place_message(np.array([3, 2, 1]))
        assert list(u) == [0, 1, 0, 2, 0, 3, 2, 1]
        assert list(toy_code.extract_message(u)) == [3, 2, 1]

    def test_place_batch(self, toy_code, rng):
        messages = toy_code.random_message(rng, batch=5)
        u = toy_code.place_message(messages)
        assert u.shape == (5, 8)
        assert np.array_equal(toy_code.extract_message(u), messages)
        toy_code.check_frozen(u)

    def test_place_wrong_length(self, toy_code):
        with pytest.raises(CodeParameterError):
            toy_code.place_message(np.array([1, 2]))

    def test_layout_read_only(self, toy_code):
        with pytest.raises(ValueError):
            toy_code.frozen_mask[0] = False

    def test_describe(self, toy_code):
        assert "(8, 3)" in toy_code.describe()
        assert "GF(4)" in toy_code.describe()


class TestEncoding:
    """Tests for the butterfly encoder against the dense generator matrix."""

    def test_two_symbol_kernel(self, gf4):
        # (lo, hi) -> (lo + alpha*hi, beta*hi)
        assert list(butterfly_encode(np.array([1, 1]), KernelCoeffs(2, 1), gf4)) == [3, 1]

    @pytest.mark.parametrize("r, N", [(1, 8), (2, 8), (4, 16), (8, 32)])
    def test_butterfly_matches_dense(self, r, N, rng):
        ctx = build_field(r)
        kernel = KernelCoeffs(min(3, ctx.q - 1), 1)
        code = CodeSpec.from_frozen(N, ctx, kernel, {})
        u = rng.integers(0, ctx.q, size=(10, N))
        assert np.array_equal(encode(u, code), encode_dense(u, code))

    def test_kronecker_base(self, gf16):
        kernel = KernelCoeffs(5, 9)
        assert np.array_equal(kronecker_power(kernel, 1, gf16), kernel_matrix(kernel))

    def test_generator_invertible(self, gf16):
        G = kronecker_power(KernelCoeffs(2, 3), 3, gf16)
        G_inv = gf_matrix_inverse(G, gf16)
        assert np.array_equal(gf_matmul(G_inv, G, gf16), np.eye(8, dtype=np.int64))

    def test_singular_matrix_rejected(self, gf16):
        with pytest.raises(CodeParameterError, match="singular"):
            gf_matrix_inverse(np.array([[1, 2], [2, 4]]), gf16)

    def test_linearity(self, gf256, rng):
        kernel = KernelCoeffs(2, 1)
        u1 = rng.integers(0, 256, size=64)
        u2 = rng.integers(0, 256, size=64)
        assert np.array_equal(
            butterfly_encode(u1 ^ u2, kernel, gf256),
            butterfly_encode(u1, kernel, gf256) ^ butterfly_encode(u2, kernel, gf256),
        )

    def test_frozen_violation(self, toy_code):
        u = toy_code.place_message(np.array([1, 1, 1]))
        u[1] = 0
        with pytest.raises(FrozenValueError) as exc_info:
            encode(u, toy_code)
        assert "Symbol 1" in str(exc_info.value)

    def test_frozen_check_can_be_skipped(self, toy_code):
        u = np.zeros(8, dtype=np.int64)
        assert encode(u, toy_code, check_frozen=False).shape == (8,)

    def test_zero_message_of_zero_frozen_code(self, code_128):
        c = encode(code_128.place_message(np.zeros(64, dtype=np.int64)), code_128)
        assert not c.any()
