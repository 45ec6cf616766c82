"""Userspace ChaCha20 CSPRNG with fast key erasure and a randomized rekey
interval, plus the benchmark and chi-square tooling used to evaluate it."""

from .chacha import (
    ChaCha20Stream,
    CounterExhaustedError,
    chacha_block,
    quarter_round,
)
from .engine import (
    BUF_SIZE,
    SEED_SIZE,
    Engine,
    EntropyError,
    OsEntropy,
    RekeyEvent,
    RekeyPolicy,
    StaticEntropy,
    parse_seed_hex,
)
from .sampler import BoundedSpec, uniform, uniform_batch, uniform_generic
from .stats import (
    ChiSquareResult,
    Histogram,
    chi_square_p_value,
    chi_square_statistic,
    chi_square_test,
    interval_uniformity_test,
)

__version__ = "0.1.0"

__all__ = [
    "BUF_SIZE",
    "BoundedSpec",
    "ChaCha20Stream",
    "ChiSquareResult",
    "CounterExhaustedError",
    "Engine",
    "EntropyError",
    "Histogram",
    "OsEntropy",
    "RekeyEvent",
    "RekeyPolicy",
    "SEED_SIZE",
    "StaticEntropy",
    "chacha_block",
    "chi_square_p_value",
    "chi_square_statistic",
    "chi_square_test",
    "interval_uniformity_test",
    "parse_seed_hex",
    "quarter_round",
    "uniform",
    "uniform_batch",
    "uniform_generic",
]
