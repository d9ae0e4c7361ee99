"""LLR-based successive cancellation (SC) and list (SCL) decoders.

Both decoders accept a batch of received words (leading axis) and decode
them in lock-step with vectorised kernel updates; the single-word entry
points wrap the batch path and attach the modelled step count. LLR sign
convention: positive favours bit 0. Ties at exactly 0 decide bit 0.

Decoding is deterministic. A decoder invocation owns all of its scratch
state, so independent calls may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polar import PolarCode, transform

__all__ = [
    "LLR_SAT",
    "DecodeResult",
    "f_node",
    "g_node",
    "saturate",
    "sc_steps",
    "scl_steps",
    "sc_decode",
    "sc_decode_batch",
    "scl_decode",
    "scl_decode_batch",
]

# Stand-in for infinite certainty; anything far above channel LLR
# magnitudes behaves identically.
LLR_SAT = 1000.0


def saturate(llr) -> np.ndarray:
    """Clamp LLRs to the finite range [-LLR_SAT, +LLR_SAT]."""
    return np.clip(np.asarray(llr, dtype=np.float64), -LLR_SAT, LLR_SAT)


def f_node(a, b):
    """Min-sum check update: sign(a)sign(b)min(|a|,|b|)."""
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def _f_node_exact(a, b):
    """Exact check update 2 atanh(tanh(a/2) tanh(b/2)), clipped."""
    prod = np.tanh(np.asarray(a) / 2.0) * np.tanh(np.asarray(b) / 2.0)
    prod = np.clip(prod, -1.0 + 1e-12, 1.0 - 1e-12)
    return np.clip(2.0 * np.arctanh(prod), -LLR_SAT, LLR_SAT)


def g_node(a, b, partial):
    """Variable update: b + (1-2*partial)*a for a known partial-sum bit."""
    return b + (1.0 - 2.0 * np.asarray(partial, dtype=np.float64)) * a


def sc_steps(N: int) -> int:
    """Modelled time steps of a fully parallel SC schedule."""
    return 2 * N - 2


def scl_steps(N: int, K: int) -> int:
    """Modelled time steps of a fully parallel SCL schedule."""
    return 2 * N + K - 2


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Input-vector estimate, re-encoded codeword and modelled steps."""

    u_hat: np.ndarray
    x_hat: np.ndarray
    steps: int


def _check_llr_batch(code: PolarCode, llrs) -> np.ndarray:
    arr = np.asarray(llrs, dtype=np.float64)
    single = arr.ndim == 1
    if single:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != code.N:
        raise ValueError(f"expected LLR shape (batch, {code.N}), got {arr.shape}")
    return saturate(arr)


def sc_decode_batch(
    code: PolarCode, llrs, *, exact_f: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """SC-decode a (batch, N) block of LLR words.

    Returns (u_hat, x_hat), both (batch, N) uint8 with x_hat the
    re-encoded estimate.
    """
    y = _check_llr_batch(code, llrs)
    batch = y.shape[0]
    f = _f_node_exact if exact_f else f_node
    frozen = code.frozen_mask
    u_hat = np.zeros((batch, code.N), dtype=np.uint8)

    def descend(node_llr: np.ndarray, base: int) -> np.ndarray:
        size = node_llr.shape[1]
        if size == 1:
            if frozen[base]:
                return np.zeros((batch, 1), dtype=np.uint8)
            bits = (node_llr[:, 0] < 0).astype(np.uint8)
            u_hat[:, base] = bits
            return bits[:, None]
        half = size // 2
        a = node_llr[:, :half]
        b = node_llr[:, half:]
        x_left = descend(f(a, b), base)
        x_right = descend(g_node(a, b, x_left), base + half)
        return np.concatenate([x_left ^ x_right, x_right], axis=1)

    x_hat = descend(y, 0)
    return u_hat, x_hat


def sc_decode(code: PolarCode, y, *, exact_f: bool = False) -> DecodeResult:
    """SC-decode one received word."""
    u_hat, x_hat = sc_decode_batch(code, np.asarray(y, dtype=np.float64)[None, :],
                                   exact_f=exact_f)
    return DecodeResult(u_hat=u_hat[0], x_hat=x_hat[0], steps=sc_steps(code.N))


def scl_decode_batch(
    code: PolarCode,
    llrs,
    list_size: int,
    *,
    exact_f: bool = False,
    fork_trace: list | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """SCL-decode a (batch, N) block of LLR words with L candidate paths.

    Every surviving path forks at each info leaf; the 2P candidates are
    pruned back to the best L by cumulative penalty (|LLR| whenever a
    decision contradicts the LLR sign, frozen zeros included). The
    lowest-metric path wins; metric ties prefer bit 0 / lower path index.
    ``fork_trace``, when a list, collects (metric_before, candidate
    metrics, kept candidate indices) per fork for diagnostics.
    """
    if list_size < 1:
        raise ValueError("list size must be >= 1")
    y = _check_llr_batch(code, llrs)
    batch = y.shape[0]
    f = _f_node_exact if exact_f else f_node
    frozen = code.frozen_mask

    metric = np.zeros((batch, 1), dtype=np.float64)
    survivor_parent: list[np.ndarray] = []  # per fork: (batch, P') parent ids
    survivor_bit: list[tuple[int, np.ndarray]] = []  # per fork: (leaf, bits)

    def realign(arr: np.ndarray, version: int) -> np.ndarray:
        """Re-index path-major state recorded at an older fork version."""
        if version == len(survivor_parent):
            return arr
        m = survivor_parent[-1]
        for t in range(len(survivor_parent) - 2, version - 1, -1):
            m = np.take_along_axis(survivor_parent[t], m, axis=1)
        return np.take_along_axis(arr, m[:, :, None], axis=1)

    def descend(node_llr: np.ndarray, base: int) -> np.ndarray:
        nonlocal metric
        size = node_llr.shape[2]
        if size == 1:
            llr = node_llr[:, :, 0]
            if frozen[base]:
                metric = metric + np.where(llr < 0, -llr, 0.0)
                return np.zeros(node_llr.shape, dtype=np.uint8)
            paths = llr.shape[1]
            penalty0 = np.where(llr < 0, -llr, 0.0)
            penalty1 = np.where(llr > 0, llr, 0.0)
            cand = np.concatenate([metric + penalty0, metric + penalty1], axis=1)
            if 2 * paths <= list_size:
                keep = np.tile(np.arange(2 * paths), (batch, 1))
            else:
                keep = np.argsort(cand, axis=1, kind="stable")[:, :list_size]
            if fork_trace is not None:
                fork_trace.append((metric.copy(), cand.copy(), keep.copy()))
            parent = keep % paths
            bits = (keep >= paths).astype(np.uint8)
            metric = np.take_along_axis(cand, keep, axis=1)
            survivor_parent.append(parent)
            survivor_bit.append((base, bits))
            return bits[:, :, None]
        half = size // 2
        version = len(survivor_parent)
        a = node_llr[:, :, :half]
        b = node_llr[:, :, half:]
        x_left = descend(f(a, b), base)
        a = realign(a, version)
        b = realign(b, version)
        mid_version = len(survivor_parent)
        x_right = descend(g_node(a, b, x_left), base + half)
        x_left = realign(x_left, mid_version)
        return np.concatenate([x_left ^ x_right, x_right], axis=2)

    descend(y[:, None, :], 0)

    # walk the fork history backwards along the lowest-metric path
    best = np.argsort(metric, axis=1, kind="stable")[:, :1]
    u_hat = np.zeros((batch, code.N), dtype=np.uint8)
    cursor = best
    for (leaf, bits), parent in zip(reversed(survivor_bit), reversed(survivor_parent)):
        u_hat[:, leaf] = np.take_along_axis(bits, cursor, axis=1)[:, 0]
        cursor = np.take_along_axis(parent, cursor, axis=1)
    return u_hat, transform(u_hat)


def scl_decode(
    code: PolarCode, y, list_size: int, *, exact_f: bool = False
) -> DecodeResult:
    """SCL-decode one received word, returning the best surviving path."""
    u_hat, x_hat = scl_decode_batch(
        code, np.asarray(y, dtype=np.float64)[None, :], list_size, exact_f=exact_f
    )
    return DecodeResult(
        u_hat=u_hat[0], x_hat=x_hat[0], steps=scl_steps(code.N, code.K)
    )
