"""AWGN/BPSK Monte Carlo harness.

Measures BER, FER, fallback fraction (gamma), mean product iterations
(t_avg) and the modelled step count for plain SC/SCL and for the
two-step product decoders (psc/pscl). Every frame draws its random
message and noise from a counter-based stream keyed by
(seed, sweep point, frame index), so results are bit-identical no matter
how frames are chunked or spread across worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .decoders import (
    LLR_SAT,
    sc_decode_batch,
    sc_steps,
    scl_decode_batch,
    scl_steps,
)
from .polar import PolarCode, encode
from .product import ProductPolarCode
from .two_step import two_step_decode

__all__ = [
    "FLAT_ALGOS",
    "PRODUCT_ALGOS",
    "SimConfig",
    "PointStats",
    "modulate_and_add_noise",
    "run_point",
    "run_sweep",
    "sweep_to_csv",
    "CSV_HEADER",
]

FLAT_ALGOS = ("sc", "scl")
PRODUCT_ALGOS = ("psc", "pscl")

# Frames are simulated in fixed-size slices; the stop rule is evaluated
# between slices so the slice size is part of the reproducible contract.
# Large slices amortise per-call overhead in the batched decoders.
CHUNK_FRAMES = 512

CSV_HEADER = (
    "ebn0_db,frames,bit_errors,frame_errors,ber,fer,gamma,t_avg,mean_steps"
)


@dataclass(frozen=True)
class SimConfig:
    """One code, one decoding algorithm, one Eb/N0 grid."""

    code: PolarCode | ProductPolarCode
    algo: str
    ebn0_grid_db: tuple[float, ...]
    max_frames: int = 1_000_000
    max_frame_errors: int = 100
    seed: int = 0
    list_size: int = 8
    max_iters: int = 4
    workers: int = 1
    noiseless: bool = False

    def __post_init__(self):
        if self.algo not in FLAT_ALGOS + PRODUCT_ALGOS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        if self.algo in PRODUCT_ALGOS and not isinstance(
            self.code, ProductPolarCode
        ):
            raise ValueError(f"{self.algo} requires a product code")
        object.__setattr__(self, "ebn0_grid_db", tuple(self.ebn0_grid_db))
        if not self.ebn0_grid_db:
            raise ValueError("Eb/N0 grid must not be empty")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.max_frame_errors < 1:
            raise ValueError("max_frame_errors must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def flat_code(self) -> PolarCode:
        code = self.code
        return code.flat_code if isinstance(code, ProductPolarCode) else code

    @property
    def N(self) -> int:
        return self.flat_code.N

    @property
    def K(self) -> int:
        return self.flat_code.K

    @property
    def rate(self) -> float:
        return self.K / self.N


@dataclass(frozen=True)
class PointStats:
    """Accumulated statistics of one Eb/N0 point."""

    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    gamma: float
    t_avg: float
    mean_steps: float


def _llrs_from_noise(bits, noise, ebn0_db: float, rate: float) -> np.ndarray:
    if rate <= 0.0:
        raise ValueError("code rate must be positive")
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))
    received = (1.0 - 2.0 * np.asarray(bits, dtype=np.float64)) + noise * np.sqrt(
        sigma2
    )
    return 2.0 * received / sigma2


def modulate_and_add_noise(x, ebn0_db: float, rate: float, rng) -> np.ndarray:
    """BPSK (0 -> +1, 1 -> -1) over AWGN, returned as channel LLRs 2r/s^2."""
    bits = np.asarray(x, dtype=np.float64)
    return _llrs_from_noise(bits, rng.standard_normal(bits.shape), ebn0_db, rate)


def _frame_rng(seed: int, point_index: int, frame_index: int) -> np.random.Generator:
    """Independent stream per frame, split by counter rather than state."""
    bitgen = np.random.Philox(
        counter=[0, frame_index, point_index, 0],
        key=[seed & 0xFFFFFFFFFFFFFFFF, 0],
    )
    return np.random.Generator(bitgen)


@dataclass
class _Tally:
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    fallbacks: int = 0
    iteration_sum: int = 0
    step_sum: int = 0

    def merge(self, other: "_Tally") -> None:
        self.frames += other.frames
        self.bit_errors += other.bit_errors
        self.frame_errors += other.frame_errors
        self.fallbacks += other.fallbacks
        self.iteration_sum += other.iteration_sum
        self.step_sum += other.step_sum


def _draw_frames(cfg: SimConfig, ebn0_db, point_index, start, count):
    """Messages, codewords and channel LLRs for frames [start, start+count).

    Each frame draws message then noise from its own counter-derived
    stream; encoding and the channel arithmetic run batched.
    """
    msgs = np.empty((count, cfg.K), dtype=np.uint8)
    noise = None if cfg.noiseless else np.empty((count, cfg.N), dtype=np.float64)
    for j in range(count):
        rng = _frame_rng(cfg.seed, point_index, start + j)
        msgs[j] = rng.integers(0, 2, size=cfg.K, dtype=np.uint8)
        if noise is not None:
            noise[j] = rng.standard_normal(cfg.N)
    words = encode(cfg.flat_code, msgs)
    if noise is None:
        llrs = LLR_SAT * (1.0 - 2.0 * words.astype(np.float64))
    else:
        llrs = _llrs_from_noise(words, noise, ebn0_db, cfg.rate)
    return msgs, llrs


def _run_chunk(cfg: SimConfig, ebn0_db: float, point_index: int,
               start: int, count: int) -> _Tally:
    tally = _Tally()
    msgs, llrs = _draw_frames(cfg, ebn0_db, point_index, start, count)
    flat = cfg.flat_code
    if cfg.algo in FLAT_ALGOS:
        if cfg.algo == "sc":
            u_hat, _ = sc_decode_batch(flat, llrs)
            steps = sc_steps(cfg.N)
        else:
            u_hat, _ = scl_decode_batch(flat, llrs, cfg.list_size)
            steps = scl_steps(cfg.N, cfg.K)
        wrong = u_hat[:, flat.info] != msgs
        tally.frames = count
        tally.bit_errors = int(wrong.sum())
        tally.frame_errors = int(wrong.any(axis=1).sum())
        tally.iteration_sum = count
        tally.step_sum = steps * count
    else:
        component = "sc" if cfg.algo == "psc" else "scl"
        shape = cfg.code.shape
        for j in range(count):
            outcome = two_step_decode(
                cfg.code,
                llrs[j].reshape(shape),
                cfg.max_iters,
                algo=component,
                list_size=cfg.list_size,
            )
            wrong = outcome.msg_hat != msgs[j]
            tally.frames += 1
            tally.bit_errors += int(wrong.sum())
            tally.frame_errors += int(wrong.any())
            tally.fallbacks += int(outcome.used_fallback)
            tally.iteration_sum += outcome.iterations
            tally.step_sum += outcome.steps
    return tally


def _chunk_bounds(max_frames: int):
    start = 0
    while start < max_frames:
        count = min(CHUNK_FRAMES, max_frames - start)
        yield start, count
        start += count


def run_point(cfg: SimConfig, ebn0_db: float, point_index: int | None = None,
              pool: ProcessPoolExecutor | None = None) -> PointStats:
    """Simulate one grid point until max_frames or max_frame_errors."""
    if point_index is None:
        grid = cfg.ebn0_grid_db
        point_index = grid.index(ebn0_db) if ebn0_db in grid else 0
    total = _Tally()
    bounds = _chunk_bounds(cfg.max_frames)
    if pool is None:
        for start, count in bounds:
            total.merge(_run_chunk(cfg, ebn0_db, point_index, start, count))
            if total.frame_errors >= cfg.max_frame_errors:
                break
    else:
        pending = []
        done = False
        while not done:
            while len(pending) < cfg.workers:
                nxt = next(bounds, None)
                if nxt is None:
                    break
                pending.append(
                    pool.submit(_run_chunk, cfg, ebn0_db, point_index, *nxt)
                )
            if not pending:
                break
            # consume strictly in submission order so the stop decision
            # is identical to the serial schedule
            total.merge(pending.pop(0).result())
            if total.frame_errors >= cfg.max_frame_errors:
                done = True
                for fut in pending:
                    fut.cancel()
    frames = total.frames
    return PointStats(
        ebn0_db=ebn0_db,
        frames=frames,
        bit_errors=total.bit_errors,
        frame_errors=total.frame_errors,
        ber=total.bit_errors / (frames * cfg.K),
        fer=total.frame_errors / frames,
        gamma=total.fallbacks / frames,
        t_avg=total.iteration_sum / frames,
        mean_steps=total.step_sum / frames,
    )


def run_sweep(cfg: SimConfig) -> list[PointStats]:
    """Run every grid point, optionally spreading chunks over processes."""
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return [
                run_point(cfg, ebn0, i, pool=pool)
                for i, ebn0 in enumerate(cfg.ebn0_grid_db)
            ]
    return [run_point(cfg, ebn0, i) for i, ebn0 in enumerate(cfg.ebn0_grid_db)]


def _fmt(value: float) -> str:
    return format(value, ".6g")


def sweep_to_csv(points: Sequence[PointStats]) -> str:
    lines = [CSV_HEADER]
    for p in points:
        lines.append(
            ",".join(
                (
                    _fmt(p.ebn0_db),
                    str(p.frames),
                    str(p.bit_errors),
                    str(p.frame_errors),
                    _fmt(p.ber),
                    _fmt(p.fer),
                    _fmt(p.gamma),
                    _fmt(p.t_avg),
                    _fmt(p.mean_steps),
                )
            )
        )
    return "\n".join(lines) + "\n"
