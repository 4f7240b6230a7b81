"""
Polar Encoder
=============
Kronecker-power encoding c = u * F^(x n) over GF(q).
"""

import numpy as np

from modules.code.spec import CodeSpec
from modules.errors import CodeParameterError, validate_power_of_two
from modules.gf.field import GfContext
from modules.llrv.transform import KernelCoeffs


def butterfly_encode(u: np.ndarray, kernel: KernelCoeffs, ctx: GfContext) -> np.ndarray:
    """
    Encode along the last axis with n butterfly stages.

    Each stage pairs positions (j, j+h) inside blocks of 2h and applies
    (lo, hi) <- (lo + alpha*hi, beta*hi). Stages act on separate index
    bits, so their order does not matter.
    """
    x = np.array(u, dtype=np.int64)
    N = x.shape[-1]
    validate_power_of_two(N, "N")
    alpha_row = ctx.mul_table[kernel.alpha]
    beta_row = ctx.mul_table[kernel.beta]
    h = N // 2
    while h >= 1:
        y = x.reshape(*x.shape[:-1], N // (2 * h), 2, h)
        lo = y[..., 0, :]
        hi = y[..., 1, :]
        x = np.stack((lo ^ alpha_row[hi], beta_row[hi]), axis=-2).reshape(x.shape)
        h //= 2
    return x


def encode(u: np.ndarray, code: CodeSpec, check_frozen: bool = True) -> np.ndarray:
    """
    Encode u (shape (N,) or (B, N)) into codeword symbols.

    Raises:
        FrozenValueError: If check_frozen and u breaks a frozen value
    """
    u = np.asarray(u, dtype=np.int64)
    if check_frozen:
        code.check_frozen(u)
    return butterfly_encode(u, code.kernel, code.field)


def kernel_matrix(kernel: KernelCoeffs) -> np.ndarray:
    return np.array([[1, 0], [kernel.alpha, kernel.beta]], dtype=np.int64)


def gf_kron(A: np.ndarray, B: np.ndarray, ctx: GfContext) -> np.ndarray:
    """Kronecker product with GF multiplication."""
    block = ctx.mul_table[A[:, None, :, None], B[None, :, None, :]]
    return block.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def kronecker_power(kernel: KernelCoeffs, n: int, ctx: GfContext) -> np.ndarray:
    """Dense generator matrix F^(x n)."""
    G = np.ones((1, 1), dtype=np.int64)
    F = kernel_matrix(kernel)
    for _ in range(n):
        G = gf_kron(F, G, ctx)
    return G


def gf_matmul(u: np.ndarray, G: np.ndarray, ctx: GfContext) -> np.ndarray:
    """Row vector(s) times matrix over GF(q); u has shape (..., k)."""
    products = ctx.mul_table[np.asarray(u)[..., :, None], G]
    return np.bitwise_xor.reduce(products, axis=-2)


def gf_matrix_inverse(A: np.ndarray, ctx: GfContext) -> np.ndarray:
    """
    Gauss-Jordan inverse of a square matrix over GF(q).

    Raises:
        CodeParameterError: If the matrix is singular
    """
    size = A.shape[0]
    work = np.concatenate([np.array(A, dtype=np.int64), np.eye(size, dtype=np.int64)], axis=1)
    for col in range(size):
        candidates = np.flatnonzero(work[col:, col])
        if len(candidates) == 0:
            raise CodeParameterError(f"Matrix is singular over GF({ctx.q})", f"no pivot in column {col}")
        pivot = col + int(candidates[0])
        work[[col, pivot]] = work[[pivot, col]]
        work[col] = ctx.mul_table[ctx.inv_table[work[col, col]], work[col]]
        for row in range(size):
            if row != col and work[row, col]:
                work[row] ^= ctx.mul_table[work[row, col], work[col]]
    return work[:, size:]


def encode_dense(u: np.ndarray, code: CodeSpec) -> np.ndarray:
    """Reference encoder via the explicit generator matrix."""
    return gf_matmul(u, kronecker_power(code.kernel, code.n, code.field), code.field)
