"""Command-line front end.

Subcommands: construct (emit a frozen set), encode / decode (single
shot), simulate (Monte Carlo sweep, CSV), latency-table (step-count
grid, CSV). Data goes to stdout, diagnostics to stderr; exit codes are
0 on success, 2 for usage errors, 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import latency, simulate
from .decoders import sc_decode, scl_decode
from .polar import (
    PolarCode,
    code_from_frozen,
    encode,
    make_code,
    read_frozen_file,
    write_frozen_file,
)
from .product import ProductPolarCode, build_product_code
from .two_step import two_step_decode

__all__ = ["main"]

SEED_ENV_VAR = "PRODPOLAR_SEED"

_GRID_EPS = 1e-9


class UsageError(Exception):
    pass


def _parse_grid(text: str) -> tuple[float, ...]:
    """A single value, or an inclusive start:step:stop sweep."""
    parts = text.split(":")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad Eb/N0 grid {text!r}") from exc
    if len(values) == 1:
        return (values[0],)
    if len(values) != 3:
        raise UsageError(f"grid must be VALUE or START:STEP:STOP, got {text!r}")
    start, step, stop = values
    if step <= 0:
        raise UsageError("grid step must be positive")
    if stop < start - _GRID_EPS:
        raise UsageError("grid stop must not precede start")
    count = int((stop - start) / step + _GRID_EPS) + 1
    return tuple(start + i * step for i in range(count))


def _parse_bits(text: str) -> np.ndarray:
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"bit string must be non-empty 0/1, got {text!r}")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc


def _flat_code(n, k, z0, frozen_file, label="") -> PolarCode:
    tag = f"{label} " if label else ""
    if n is None:
        raise UsageError(f"missing --{'n' + label if label else 'n'}")
    if frozen_file is not None:
        if k is not None:
            raise UsageError(
                f"{tag}code: give either a dimension or a frozen file, not both"
            )
        try:
            frozen = read_frozen_file(frozen_file)
        except OSError as exc:
            raise UsageError(f"cannot read frozen file: {exc}") from exc
        try:
            return code_from_frozen(n, frozen)
        except ValueError as exc:
            raise UsageError(f"{tag}code: {exc}") from exc
    if k is None:
        raise UsageError(f"{tag}code needs a dimension (or a frozen file)")
    try:
        return make_code(n, k, z0=z0)
    except ValueError as exc:
        raise UsageError(f"{tag}code: {exc}") from exc


def _build_code(args) -> PolarCode | ProductPolarCode:
    if args.product:
        col = _flat_code(args.nc, args.kc, args.z0, args.col_frozen_file, "c")
        row = _flat_code(args.nr, args.kr, args.z0, args.row_frozen_file, "r")
        return build_product_code(col, row)
    if args.nr is not None or args.nc is not None:
        raise UsageError("--nr/--nc need --product")
    return _flat_code(args.n, args.k, args.z0, args.frozen_file)


def _add_code_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("code selection")
    group.add_argument("--n", type=int, help="log2 of the code length")
    group.add_argument("--k", type=int, help="code dimension")
    group.add_argument("--z0", type=float, default=0.5,
                       help="construction design parameter in (0,1)")
    group.add_argument("--frozen-file", help="read the frozen set from a file")
    group.add_argument("--product", action="store_true",
                       help="build a product of two component codes")
    group.add_argument("--nr", type=int, help="log2 row-code length")
    group.add_argument("--kr", type=int, help="row-code dimension")
    group.add_argument("--nc", type=int, help="log2 column-code length")
    group.add_argument("--kc", type=int, help="column-code dimension")
    group.add_argument("--row-frozen-file", help="row-code frozen set file")
    group.add_argument("--col-frozen-file", help="column-code frozen set file")


def _add_decoder_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algo", default="sc",
                        choices=["sc", "scl", "psc", "pscl"])
    parser.add_argument("--list", dest="list_size", type=int, default=8,
                        help="list size for scl/pscl")
    parser.add_argument("--t", type=int, default=4,
                        help="max product iterations for psc/pscl")


def _cmd_construct(args) -> int:
    code = _build_code(args)
    flat = code.flat_code if isinstance(code, ProductPolarCode) else code
    if args.out:
        write_frozen_file(args.out, flat.frozen)
    else:
        for idx in flat.frozen:
            print(int(idx))
    print(f"N={flat.N} K={flat.K} frozen={flat.N - flat.K}", file=sys.stderr)
    return 0


def _cmd_encode(args) -> int:
    code = _build_code(args)
    flat = code.flat_code if isinstance(code, ProductPolarCode) else code
    msg = _parse_bits(args.bits)
    if msg.size != flat.K:
        raise UsageError(f"message must have {flat.K} bits, got {msg.size}")
    word = encode(flat, msg)
    print("".join(str(int(b)) for b in word))
    return 0


def _read_llrs(args, expected: int) -> np.ndarray:
    if args.llrs is not None:
        text = args.llrs
    elif args.llr_file is not None:
        try:
            with open(args.llr_file, "r", encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read LLR file: {exc}") from exc
    else:
        text = sys.stdin.read()
    try:
        llr = np.array([float(v) for v in text.split()], dtype=np.float64)
    except ValueError as exc:
        raise UsageError(f"bad LLR value: {exc}") from exc
    if llr.size != expected:
        raise UsageError(f"expected {expected} LLRs, got {llr.size}")
    return llr


def _cmd_decode(args) -> int:
    code = _build_code(args)
    is_product = isinstance(code, ProductPolarCode)
    if args.algo in ("psc", "pscl") and not is_product:
        raise UsageError(f"--algo {args.algo} needs --product")
    flat = code.flat_code if is_product else code
    llr = _read_llrs(args, flat.N)
    if args.algo == "sc":
        msg = sc_decode(flat, llr).u_hat[flat.info]
    elif args.algo == "scl":
        msg = scl_decode(flat, llr, args.list_size).u_hat[flat.info]
    else:
        component = "sc" if args.algo == "psc" else "scl"
        outcome = two_step_decode(
            code, llr.reshape(code.shape), args.t,
            algo=component, list_size=args.list_size,
        )
        msg = outcome.msg_hat
        print(
            f"converged={outcome.converged} iterations={outcome.iterations} "
            f"fallback={outcome.used_fallback} steps={outcome.steps}",
            file=sys.stderr,
        )
    print("".join(str(int(b)) for b in msg))
    return 0


def _cmd_simulate(args) -> int:
    code = _build_code(args)
    try:
        cfg = simulate.SimConfig(
            code=code,
            algo=args.algo,
            ebn0_grid_db=_parse_grid(args.ebn0),
            max_frames=args.frames,
            max_frame_errors=args.frame_errors,
            seed=_resolve_seed(args),
            list_size=args.list_size,
            max_iters=args.t,
            workers=args.workers or os.cpu_count() or 1,
            noiseless=args.noiseless,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = simulate.sweep_to_csv(simulate.run_sweep(cfg))
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_latency_table(args) -> int:
    pairs = []
    for raw in args.pair or ():
        try:
            n_text, k_text = raw.split(":")
            pairs.append((int(n_text), int(k_text)))
        except ValueError as exc:
            raise UsageError(f"--pair expects N:K, got {raw!r}") from exc
    try:
        rows = latency.latency_table(extra_pairs=pairs, t=args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(latency.table_to_csv(rows))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodpolar",
        description="Product polar codes: construction, decoding, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="emit a frozen set")
    _add_code_args(p_construct)
    p_construct.add_argument("--out", help="write the frozen set to this file")
    p_construct.set_defaults(func=_cmd_construct)

    p_encode = sub.add_parser("encode", help="encode one message")
    _add_code_args(p_encode)
    p_encode.add_argument("--bits", required=True, help="message bits, e.g. 1011")
    p_encode.set_defaults(func=_cmd_encode)

    p_decode = sub.add_parser("decode", help="decode one LLR word")
    _add_code_args(p_decode)
    _add_decoder_args(p_decode)
    p_decode.add_argument("--llrs", help="whitespace-separated LLR values")
    p_decode.add_argument("--llr-file", help="read LLRs from a file")
    p_decode.set_defaults(func=_cmd_decode)

    p_sim = sub.add_parser("simulate", help="Monte Carlo BER/FER sweep")
    _add_code_args(p_sim)
    _add_decoder_args(p_sim)
    p_sim.add_argument("--ebn0", required=True,
                       help="Eb/N0 grid in dB: VALUE or START:STEP:STOP")
    p_sim.add_argument("--frames", type=int, default=100_000,
                       help="frame budget per point")
    p_sim.add_argument("--frame-errors", type=int, default=100,
                       help="stop a point after this many frame errors")
    p_sim.add_argument("--seed", type=int,
                       help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)")
    p_sim.add_argument("--workers", type=int,
                       help="worker processes (default: all cores)")
    p_sim.add_argument("--noiseless", action="store_true",
                       help="debug: disable channel noise")
    p_sim.add_argument("--out", help="write CSV here instead of stdout")
    p_sim.set_defaults(func=_cmd_simulate)

    p_table = sub.add_parser("latency-table", help="decoding step-count grid")
    p_table.add_argument("--pair", action="append", metavar="N:K",
                         help="extra code size to tabulate (repeatable)")
    p_table.add_argument("--t", type=int, default=4,
                         help="iteration budget for the worst case")
    p_table.set_defaults(func=_cmd_latency_table)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # runtime failure, not a usage problem
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
