"""Two-step decoding of product-constructed codes.

Step 1 treats the received block as a product code: decode every row and
every column independently, re-encode the estimates into X_r and X_c, and
stop as soon as the two agree. On disagreement a greedy pass pins the
mismatches on whole rows/columns, the estimates of the other direction
are turned into saturated LLRs (with the crossings of flagged lines
erased to 0), and only the flagged lines are decoded again, up to t
rounds. Step 2, reached only if step 1 never converges, decodes the raw
channel LLRs with the full-length code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import latency
from .decoders import (
    LLR_SAT,
    saturate,
    sc_decode_batch,
    scl_decode_batch,
)
from .product import ProductPolarCode, recover_message

__all__ = [
    "MismatchReport",
    "DecodeOutcome",
    "find_erroneous_estimations",
    "build_reinforced_llrs",
    "two_step_decode",
]


@dataclass(frozen=True)
class MismatchReport:
    """Row/column indices blamed for the X_r vs X_c disagreements."""

    err_rows: frozenset
    err_cols: frozenset


@dataclass(frozen=True, eq=False)
class DecodeOutcome:
    msg_hat: np.ndarray
    converged: bool
    iterations: int
    used_fallback: bool
    steps: int


def find_erroneous_estimations(x_r, x_c) -> MismatchReport:
    """Greedily attribute every mismatch cell to a row or a column.

    Repeatedly flag the line with the most remaining mismatches (a row
    only when the best row strictly beats the best column) and clear it,
    until none remain. Ties inside a direction take the lowest index.
    """
    x_r = np.asarray(x_r, dtype=np.uint8)
    x_c = np.asarray(x_c, dtype=np.uint8)
    if x_r.shape != x_c.shape or x_r.ndim != 2:
        raise ValueError(f"shape mismatch: {x_r.shape} vs {x_c.shape}")
    diff = (x_r ^ x_c).astype(np.int64)
    n_rows, n_cols = diff.shape
    err_rows: set[int] = set()
    err_cols: set[int] = set()
    for _ in range(n_rows + n_cols):
        if not diff.any():
            break
        row_counts = diff.sum(axis=1)
        col_counts = diff.sum(axis=0)
        worst_row = int(np.argmax(row_counts))
        worst_col = int(np.argmax(col_counts))
        if row_counts[worst_row] > col_counts[worst_col]:
            err_rows.add(worst_row)
            diff[worst_row, :] = 0
        else:
            err_cols.add(worst_col)
            diff[:, worst_col] = 0
    return MismatchReport(err_rows=frozenset(err_rows), err_cols=frozenset(err_cols))


def build_reinforced_llrs(x_other, report: MismatchReport, axis: str) -> np.ndarray:
    """Saturated LLRs from the opposite direction's hard estimates.

    axis="rows" builds the row decoders' input from X_c (+SAT for bit 0,
    -SAT for bit 1) and erases the flagged columns; axis="cols" mirrors
    this from X_r, erasing flagged rows.
    """
    bits = np.asarray(x_other, dtype=np.float64)
    llrs = (1.0 - 2.0 * bits) * LLR_SAT
    if axis == "rows":
        if report.err_cols:
            llrs[:, sorted(report.err_cols)] = 0.0
    elif axis == "cols":
        if report.err_rows:
            llrs[sorted(report.err_rows), :] = 0.0
    else:
        raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")
    return llrs


def _codeword_estimates(code, llr_words, algo, list_size, exact_f):
    if algo == "sc":
        _, x_hat = sc_decode_batch(code, llr_words, exact_f=exact_f)
    else:
        _, x_hat = scl_decode_batch(code, llr_words, list_size, exact_f=exact_f)
    return x_hat


def _component_step_cost(p: ProductPolarCode, algo: str) -> int:
    if p.row_code.N > p.col_code.N:
        side, side_k = p.row_code.N, p.row_code.K
    elif p.col_code.N > p.row_code.N:
        side, side_k = p.col_code.N, p.col_code.K
    else:
        side, side_k = p.row_code.N, max(p.row_code.K, p.col_code.K)
    return latency.delta(algo, side, side_k)


def two_step_decode(
    p: ProductPolarCode,
    y,
    t: int = 4,
    *,
    algo: str = "sc",
    list_size: int = 8,
    exact_f: bool = False,
    redecode_all: bool = False,
) -> DecodeOutcome:
    """Decode an (N_c x N_r) LLR matrix with the two-step scheme.

    ``algo`` picks the component (and fallback) decoder, "sc" or "scl".
    ``redecode_all`` switches to the alternative schedule in which every
    round decodes all rows and columns from the channel LLRs again
    instead of only the flagged lines from the reinforced ones; it is
    kept for comparison only.
    """
    if t < 1:
        raise ValueError("iteration budget t must be >= 1")
    if algo not in ("sc", "scl"):
        raise ValueError(f"component decoder must be 'sc' or 'scl', got {algo!r}")
    y = saturate(y)
    if y.shape != p.shape:
        raise ValueError(f"LLR matrix must be {p.shape}, got {y.shape}")

    def decode_rows(llr_matrix):
        return _codeword_estimates(p.row_code, llr_matrix, algo, list_size, exact_f)

    def decode_cols(llr_matrix):
        return _codeword_estimates(
            p.col_code, llr_matrix.T, algo, list_size, exact_f
        ).T

    x_r = decode_rows(y)
    x_c = decode_cols(y)
    iterations = 1
    converged = False
    while True:
        if np.array_equal(x_r, x_c):
            converged = True
            break
        if iterations == t:
            break
        report = find_erroneous_estimations(x_r, x_c)
        y_r = build_reinforced_llrs(x_c, report, "rows")
        y_c = build_reinforced_llrs(x_r, report, "cols")
        iterations += 1
        if redecode_all:
            x_r = decode_rows(y)
            x_c = decode_cols(y)
            continue
        rows = sorted(report.err_rows)
        cols = sorted(report.err_cols)
        if rows:
            x_r[rows, :] = decode_rows(y_r[rows, :])
        if cols:
            x_c[:, cols] = decode_cols(y_c[:, cols])

    steps = iterations * _component_step_cost(p, algo)
    if converged:
        msg_hat = recover_message(p, x_r.reshape(-1))
        used_fallback = False
    else:
        flat = p.flat_code
        if algo == "sc":
            u_hat, _ = sc_decode_batch(flat, y.reshape(1, -1), exact_f=exact_f)
        else:
            u_hat, _ = scl_decode_batch(
                flat, y.reshape(1, -1), list_size, exact_f=exact_f
            )
        msg_hat = u_hat[0, flat.info]
        used_fallback = True
        steps += latency.delta(algo, flat.N, flat.K)
    return DecodeOutcome(
        msg_hat=msg_hat,
        converged=converged,
        iterations=iterations,
        used_fallback=used_fallback,
        steps=steps,
    )
