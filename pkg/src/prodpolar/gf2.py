"""Dense GF(2) vectors, matrices and Kronecker products.

Bits are stored one per byte in ``numpy.uint8`` arrays (row-major). The
matrix product packs its operands into machine words so the inner loop is
a word-parallel AND/popcount; everything else is plain vectorised XOR.
All functions are pure and never mutate their arguments, so values can be
shared freely between threads or processes.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "bit_word",
    "bit_matrix",
    "gf2_matmul",
    "kron",
    "row_vectorize",
    "identity",
    "kernel_matrix",
    "transform_matrix",
    "DENSE_LIMIT_LOG2",
]

# Dense transform matrices are test/oracle material only; production
# encoding goes through the O(N log N) butterfly in polar.py.
DENSE_LIMIT_LOG2 = 10


def bit_word(values) -> np.ndarray:
    """Coerce ``values`` to a 1-D uint8 array and check every entry is 0/1."""
    w = np.asarray(values, dtype=np.uint8)
    if w.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {w.shape}")
    if w.size and int(w.max()) > 1:
        raise ValueError("bit vector entries must be 0 or 1")
    return w


def bit_matrix(values) -> np.ndarray:
    """Coerce ``values`` to a 2-D uint8 array and check every entry is 0/1."""
    m = np.asarray(values, dtype=np.uint8)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D bit matrix, got shape {m.shape}")
    if m.size and int(m.max()) > 1:
        raise ValueError("bit matrix entries must be 0 or 1")
    return m


def gf2_matmul(a, b) -> np.ndarray:
    """Matrix product over GF(2).

    Accepts 2-D operands (and a 1-D left operand, treated as a row
    vector). Operands are packed into words; each output bit is the
    parity of a word-wise AND.
    """
    a_arr = np.asarray(a, dtype=np.uint8)
    vector_in = a_arr.ndim == 1
    a_mat = bit_matrix(a_arr.reshape(1, -1) if vector_in else a_arr)
    b_mat = bit_matrix(b)
    if a_mat.shape[1] != b_mat.shape[0]:
        raise ValueError(
            f"dimension mismatch: {a_mat.shape} x {b_mat.shape}"
        )
    packed_rows = np.packbits(a_mat, axis=1)
    packed_cols = np.packbits(b_mat.T, axis=1)
    out = np.empty((a_mat.shape[0], b_mat.shape[1]), dtype=np.uint8)
    for i in range(a_mat.shape[0]):
        ones = np.bitwise_count(packed_rows[i] & packed_cols)
        out[i] = ones.sum(axis=1, dtype=np.uint32) & 1
    return out[0] if vector_in else out


def kron(a, b) -> np.ndarray:
    """Kronecker product over GF(2); 1-D inputs stay 1-D."""
    a_arr = np.asarray(a, dtype=np.uint8)
    b_arr = np.asarray(b, dtype=np.uint8)
    for arr in (a_arr, b_arr):
        if arr.ndim not in (1, 2):
            raise ValueError("kron expects 1-D or 2-D operands")
        if arr.size and int(arr.max()) > 1:
            raise ValueError("kron operands must be 0/1 valued")
    # entries are 0/1 so the integer Kronecker product is already GF(2)
    return np.kron(a_arr, b_arr)


def row_vectorize(m) -> np.ndarray:
    """Flatten a matrix by juxtaposing its rows head-to-tail."""
    return bit_matrix(m).flatten()


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def kernel_matrix() -> np.ndarray:
    """The 2x2 lower-triangular polarisation kernel."""
    return np.array([[1, 0], [1, 1]], dtype=np.uint8)


def transform_matrix(n: int) -> np.ndarray:
    """Dense n-fold Kronecker power of the kernel (2^n x 2^n).

    Only sensible at oracle scale; refuses n > DENSE_LIMIT_LOG2.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > DENSE_LIMIT_LOG2:
        raise ValueError(
            f"dense transform matrices are limited to n <= {DENSE_LIMIT_LOG2}"
        )
    out = np.array([[1]], dtype=np.uint8)
    k = kernel_matrix()
    for _ in range(n):
        out = np.kron(out, k)
    return out
