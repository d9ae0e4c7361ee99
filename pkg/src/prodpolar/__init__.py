"""Product polar codes: construction, decoding, latency model, simulation.

A long code is built as the product of two short component codes; the
result is itself a code of the same family, so it can be decoded either
as a product (fast, parallel row/column passes with a full-length
fallback) or directly. This package provides both paths plus a
step-count latency model and an AWGN Monte Carlo harness.
"""

from .decoders import (
    LLR_SAT,
    DecodeResult,
    sc_decode,
    sc_decode_batch,
    scl_decode,
    scl_decode_batch,
)
from .latency import LatencyModelInput, delta, latency_table, product_delta
from .polar import (
    PolarCode,
    ReliabilitySequence,
    bhattacharyya_reliabilities,
    code_from_frozen,
    encode,
    expand_message,
    make_code,
    transform,
)
from .product import (
    ProductPolarCode,
    build_product_code,
    encode_product,
    fill_input_matrix,
    recover_message,
)
from .simulate import PointStats, SimConfig, run_point, run_sweep, sweep_to_csv
from .two_step import (
    DecodeOutcome,
    MismatchReport,
    build_reinforced_llrs,
    find_erroneous_estimations,
    two_step_decode,
)

__version__ = "0.1.0"

__all__ = [
    "LLR_SAT",
    "DecodeResult",
    "DecodeOutcome",
    "LatencyModelInput",
    "MismatchReport",
    "PointStats",
    "PolarCode",
    "ProductPolarCode",
    "ReliabilitySequence",
    "SimConfig",
    "bhattacharyya_reliabilities",
    "build_product_code",
    "build_reinforced_llrs",
    "code_from_frozen",
    "delta",
    "encode",
    "encode_product",
    "expand_message",
    "fill_input_matrix",
    "find_erroneous_estimations",
    "latency_table",
    "make_code",
    "product_delta",
    "recover_message",
    "run_point",
    "run_sweep",
    "sc_decode",
    "sc_decode_batch",
    "scl_decode",
    "scl_decode_batch",
    "sweep_to_csv",
    "transform",
    "two_step_decode",
    "__version__",
]
