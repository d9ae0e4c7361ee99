"""Closed-form decoding time-step model.

A fully parallel SC schedule needs 2N-2 steps for a length-N code and
2N+K-2 with list decoding. Two-step product decoding runs the row and
column component decoders simultaneously, so its expected cost is

    t_avg * steps(max(N_r, N_c)) + gamma * steps(N)

with t_avg the mean number of product iterations and gamma the fraction
of decodes that fell back to the full-length decoder. Worst case assumes
t_avg = t and gamma = 1; best case t_avg = 1 and gamma = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

__all__ = [
    "delta",
    "LatencyModelInput",
    "product_delta",
    "worst_case_delta",
    "best_case_delta",
    "reference_rows",
    "latency_table",
    "table_to_csv",
    "TABLE_COLUMNS",
]

_ALGOS = ("sc", "scl")


def delta(algo: str, N: int, K: int | None = None) -> int:
    """Time steps of a fully parallel decoder for a length-N code."""
    if N < 2 or N & (N - 1):
        raise ValueError(f"N must be a power of two >= 2, got {N}")
    kind = algo.lower()
    if kind == "sc":
        return 2 * N - 2
    if kind == "scl":
        if K is None:
            raise ValueError("list decoding cost needs the code dimension K")
        return 2 * N + K - 2
    raise ValueError(f"unknown algorithm {algo!r}")


@dataclass(frozen=True)
class LatencyModelInput:
    """Geometry and operating point for the two-step cost model."""

    algo: str
    N: int
    K: int
    N_r: int
    N_c: int
    K_r: int
    K_c: int
    t_avg: float = 1.0
    gamma: float = 0.0
    t: int = 4

    def __post_init__(self):
        if self.N != self.N_r * self.N_c:
            raise ValueError("N must equal N_r * N_c")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        if self.t_avg < 1.0:
            raise ValueError("t_avg must be >= 1")


def _component_side(inp: LatencyModelInput) -> tuple[int, int]:
    """Length and dimension of the slower (longer) component side.

    Equal-length sides with unequal dimensions take the larger K, which
    is the conservative choice for list decoding.
    """
    if inp.N_r > inp.N_c:
        return inp.N_r, inp.K_r
    if inp.N_c > inp.N_r:
        return inp.N_c, inp.K_c
    return inp.N_r, max(inp.K_r, inp.K_c)


def product_delta(inp: LatencyModelInput) -> float:
    """Expected two-step cost: t_avg * component steps + gamma * flat steps."""
    side_n, side_k = _component_side(inp)
    return inp.t_avg * delta(inp.algo, side_n, side_k) + inp.gamma * delta(
        inp.algo, inp.N, inp.K
    )


def worst_case_delta(inp: LatencyModelInput) -> int:
    return int(product_delta(replace(inp, t_avg=float(inp.t), gamma=1.0)))


def best_case_delta(inp: LatencyModelInput) -> int:
    return int(product_delta(replace(inp, t_avg=1.0, gamma=0.0)))


# Built-in reference design points: square products of side 32..512 at
# component rates 7/8 and 9/10. For the 9/10 rows the rate-derived
# dimensions are fractional; the step model rounds them up
# (ceil(0.9 * side) per component, ceil(0.81 * N) flat) while the K
# column keeps the conventional product of integer component dimensions.
# Tuples: (N, K, side, side_k_model, flat_k_model).
_REFERENCE_POINTS: tuple[tuple[int, int, int, int, int], ...] = (
    (1024, 784, 32, 28, 784),
    (1024, 841, 32, 29, 830),
    (4096, 3136, 64, 56, 3136),
    (4096, 3249, 64, 58, 3318),
    (16384, 12544, 128, 112, 12544),
    (16384, 13225, 128, 116, 13272),
    (65536, 50176, 256, 224, 50176),
    (65536, 52900, 256, 231, 53085),
    (262144, 200704, 512, 448, 200704),
    (262144, 211600, 512, 461, 212337),
)

TABLE_COLUMNS = (
    "N",
    "K",
    "delta_sc",
    "psc_wc",
    "psc_bc",
    "delta_scl",
    "pscl_wc",
    "pscl_bc",
)


def _table_row(
    N: int, K: int, side: int, side_k: int, flat_k: int, t: int
) -> tuple[int, ...]:
    sc = LatencyModelInput(
        algo="sc", N=N, K=flat_k, N_r=side, N_c=N // side, K_r=side_k,
        K_c=side_k, t=t,
    )
    scl = replace(sc, algo="scl")
    return (
        N,
        K,
        delta("sc", N),
        worst_case_delta(sc),
        best_case_delta(sc),
        delta("scl", N, flat_k),
        worst_case_delta(scl),
        best_case_delta(scl),
    )


def reference_rows(t: int = 4) -> list[tuple[int, ...]]:
    """The built-in grid of step counts for the reference design points."""
    return [_table_row(*point, t=t) for point in _REFERENCE_POINTS]


def _user_row(N: int, K: int, t: int) -> tuple[int, ...]:
    """Row for an arbitrary (N, K): near-square split, rate-matched
    component dimension rounded up."""
    if N < 4 or N & (N - 1):
        raise ValueError(f"N must be a power of two >= 4, got {N}")
    if not 0 < K <= N:
        raise ValueError(f"K must lie in (0, {N}], got {K}")
    n = N.bit_length() - 1
    side = 1 << ((n + 1) // 2)
    side_k = min(side, math.ceil(math.sqrt(K / N) * side))
    return _table_row(N, K, side, side_k, K, t)


def latency_table(
    extra_pairs: Iterable[tuple[int, int]] = (), t: int = 4
) -> list[tuple[int, ...]]:
    """Reference rows plus rows for any user-supplied (N, K) pairs."""
    rows = reference_rows(t=t)
    rows.extend(_user_row(N, K, t) for N, K in extra_pairs)
    return rows


def table_to_csv(rows: Sequence[Sequence[int]]) -> str:
    lines = [",".join(TABLE_COLUMNS)]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
