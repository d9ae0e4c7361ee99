"""Product construction: two short component codes yield one long code.

An (N_c x N_r) input matrix with zeroed frozen rows/columns, encoded row
by row with the row code and column by column with the column code, is
exactly the length N_r*N_c code whose frozen set is the zero set of the
Kronecker product of the component info-set indicators. Message bits fill
the free cells of the input matrix row first from the top left, which is
the same thing as ascending flat info-set order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .polar import PolarCode, code_from_frozen, transform

__all__ = [
    "ProductPolarCode",
    "build_product_code",
    "fill_input_matrix",
    "encode_product",
    "recover_message",
]


@dataclass(frozen=True, eq=False)
class ProductPolarCode:
    """A pair of component codes plus the equivalent flat long code."""

    row_code: PolarCode
    col_code: PolarCode
    flat_code: PolarCode

    @property
    def N(self) -> int:
        return self.flat_code.N

    @property
    def K(self) -> int:
        return self.flat_code.K

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols) of the codeword matrix."""
        return (self.col_code.N, self.row_code.N)

    def __repr__(self):
        return (
            f"ProductPolarCode({self.col_code.N}x{self.row_code.N}, "
            f"K={self.K})"
        )


def build_product_code(col_code: PolarCode, row_code: PolarCode) -> ProductPolarCode:
    """Derive the flat code of the product col_code x row_code.

    A flat position a*N_r + b is frozen iff row a is frozen in the column
    code or column b is frozen in the row code, i.e. where the Kronecker
    product of the info indicators is zero.
    """
    info_row = np.ones(row_code.N, dtype=np.uint8)
    info_row[row_code.frozen] = 0
    info_col = np.ones(col_code.N, dtype=np.uint8)
    info_col[col_code.frozen] = 0
    indicator = gf2.kron(info_col, info_row)
    flat = code_from_frozen(
        col_code.n + row_code.n, np.flatnonzero(indicator == 0)
    )
    return ProductPolarCode(row_code=row_code, col_code=col_code, flat_code=flat)


def fill_input_matrix(p: ProductPolarCode, msg) -> np.ndarray:
    """Arrange K message bits into the (N_c x N_r) input matrix.

    Frozen rows/columns stay zero; the free cells are filled row first
    starting from the top-left one.
    """
    msg_arr = np.asarray(msg, dtype=np.uint8)
    if msg_arr.shape != (p.K,):
        raise ValueError(f"message length must be {p.K}, got {msg_arr.shape}")
    if msg_arr.size and int(msg_arr.max()) > 1:
        raise ValueError("message entries must be 0 or 1")
    u = np.zeros(p.shape, dtype=np.uint8)
    free = np.ix_(p.col_code.info, p.row_code.info)
    u[free] = msg_arr.reshape(p.col_code.K, p.row_code.K)
    return u


def encode_product(p: ProductPolarCode, u: np.ndarray) -> np.ndarray:
    """Encode the input matrix: rows by the row code, columns by the
    column code (the order does not change the result)."""
    u = gf2.bit_matrix(u)
    if u.shape != p.shape:
        raise ValueError(f"input matrix must be {p.shape}, got {u.shape}")
    if u[p.col_code.frozen, :].any() or u[:, p.row_code.frozen].any():
        raise ValueError("input matrix must be zero on frozen rows/columns")
    rows_encoded = transform(u)  # each row times the row-code transform
    return transform(rows_encoded.T).T  # then each column


def recover_message(p: ProductPolarCode, x_hat) -> np.ndarray:
    """Invert encoding of a flat codeword estimate (the transform is its
    own inverse) and read the message off the flat info positions."""
    x_arr = np.asarray(x_hat, dtype=np.uint8)
    if x_arr.shape != (p.N,):
        raise ValueError(f"codeword length must be {p.N}, got {x_arr.shape}")
    u_hat = transform(x_arr)
    return u_hat[p.flat_code.info]
