"""Polar code definition, reliability-based construction and fast encoding.

Index convention is natural (non bit-reversed) and 0-based throughout: the
transform is the plain n-fold Kronecker power of the 2x2 kernel, input
index 0 is the least reliable bit channel and index N-1 the most reliable.
Codes are immutable once built; ``encode``/``transform`` are pure and safe
to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ReliabilitySequence",
    "PolarCode",
    "bhattacharyya_reliabilities",
    "make_code",
    "code_from_frozen",
    "expand_message",
    "transform",
    "encode",
    "read_frozen_file",
    "write_frozen_file",
]


@dataclass(frozen=True, eq=False)
class ReliabilitySequence:
    """Permutation of [0, N) sorted least-reliable first."""

    order: np.ndarray
    design_param: float

    def __post_init__(self):
        order = np.asarray(self.order, dtype=np.int64)
        if not np.array_equal(np.sort(order), np.arange(order.size)):
            raise ValueError("order must be a permutation of range(N)")
        order.flags.writeable = False
        object.__setattr__(self, "order", order)

    @property
    def size(self) -> int:
        return int(self.order.size)


@dataclass(frozen=True, eq=False)
class PolarCode:
    """Length 2^n block code with a fixed set of zeroed input positions."""

    n: int
    N: int
    K: int
    frozen: np.ndarray  # sorted indices, length N-K
    info: np.ndarray  # sorted complement, length K
    frozen_mask: np.ndarray  # bool, length N

    @property
    def rate(self) -> float:
        return self.K / self.N

    def __repr__(self):
        return f"PolarCode(N={self.N}, K={self.K})"


def _rank_by_reliability(z: np.ndarray) -> np.ndarray:
    """Indices sorted worst channel first; ties broken by lower index."""
    return np.argsort(-z, kind="stable").astype(np.int64)


def bhattacharyya_reliabilities(n: int, z0: float = 0.5) -> ReliabilitySequence:
    """Rank the N = 2^n bit channels by the evolved channel parameter.

    Starting from z0, every halving step maps a channel with parameter z
    to a degraded child 2z - z^2 (even index) and an upgraded child z^2
    (odd index). Lower final value = more reliable.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < z0 < 1.0:
        raise ValueError("design parameter must lie strictly inside (0, 1)")
    z = np.array([z0], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return ReliabilitySequence(order=_rank_by_reliability(z), design_param=z0)


def code_from_frozen(n: int, frozen) -> PolarCode:
    """Build a code of length 2^n directly from its frozen index set."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = 1 << n
    frozen_arr = np.unique(np.asarray(frozen, dtype=np.int64))
    if frozen_arr.size != np.asarray(frozen).size:
        raise ValueError("frozen set contains duplicate indices")
    if frozen_arr.size and (frozen_arr[0] < 0 or frozen_arr[-1] >= size):
        raise ValueError(f"frozen indices must lie in [0, {size})")
    mask = np.zeros(size, dtype=bool)
    mask[frozen_arr] = True
    info = np.flatnonzero(~mask).astype(np.int64)
    for arr in (frozen_arr, info, mask):
        arr.flags.writeable = False
    return PolarCode(
        n=n,
        N=size,
        K=int(info.size),
        frozen=frozen_arr,
        info=info,
        frozen_mask=mask,
    )


def make_code(
    n: int, K: int, rel: ReliabilitySequence | None = None, *, z0: float = 0.5
) -> PolarCode:
    """Freeze the N-K least reliable positions of a length-2^n code."""
    size = 1 << n
    if not 0 <= K <= size:
        raise ValueError(f"K must lie in [0, {size}], got {K}")
    if rel is None:
        rel = bhattacharyya_reliabilities(n, z0)
    if rel.size != size:
        raise ValueError("reliability sequence length does not match 2^n")
    return code_from_frozen(n, rel.order[: size - K])


def expand_message(code: PolarCode, msg) -> np.ndarray:
    """Place message bits on the info positions, zeros on frozen ones.

    Accepts a trailing message axis of length K with arbitrary leading
    batch axes.
    """
    msg_arr = np.asarray(msg, dtype=np.uint8)
    if msg_arr.shape[-1:] != (code.K,):
        raise ValueError(f"message length must be {code.K}, got {msg_arr.shape}")
    if msg_arr.size and int(msg_arr.max()) > 1:
        raise ValueError("message entries must be 0 or 1")
    u = np.zeros(msg_arr.shape[:-1] + (code.N,), dtype=np.uint8)
    u[..., code.info] = msg_arr
    return u


def transform(v) -> np.ndarray:
    """Multiply by the Kronecker-power transform via the XOR butterfly.

    Works along the last axis (any leading batch axes), O(N log N) bit
    operations, and is its own inverse over GF(2).
    """
    x = np.array(v, dtype=np.uint8, copy=True, order="C")
    size = x.shape[-1]
    if size < 1 or size & (size - 1):
        raise ValueError(f"length must be a power of two, got {size}")
    if x.size and int(x.max()) > 1:
        raise ValueError("transform input must be 0/1 valued")
    flat = x.reshape(-1, size)
    h = 1
    while h < size:
        blocks = flat.reshape(flat.shape[0], -1, 2 * h)
        blocks[:, :, :h] ^= blocks[:, :, h:]
        h *= 2
    return x


def encode(code: PolarCode, msg) -> np.ndarray:
    """Codeword for a K-bit message (batchable along leading axes)."""
    return transform(expand_message(code, msg))


def write_frozen_file(path, frozen) -> None:
    """Write a frozen set as text: one decimal index per line, ascending."""
    indices = np.unique(np.asarray(frozen, dtype=np.int64))
    with open(path, "w", encoding="ascii") as fh:
        for idx in indices:
            fh.write(f"{int(idx)}\n")


def read_frozen_file(path) -> np.ndarray:
    """Read a frozen set written by :func:`write_frozen_file`."""
    indices = []
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: not an index: {text!r}") from exc
            if value < 0:
                raise ValueError(f"{path}:{line_no}: negative index {value}")
            indices.append(value)
    arr = np.array(sorted(indices), dtype=np.int64)
    if np.unique(arr).size != arr.size:
        raise ValueError(f"{path}: duplicate frozen indices")
    return arr
