"""Unbiased bounded integers by rejection sampling (arc4random_uniform).

Raw words below a threshold are discarded so the final modulo reduction is
exactly uniform. The algorithm is parameterized by word width so small widths
can be tested by exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def min_accept(upper_bound, width=32):
    """Smallest raw word that is accepted: (2^w - bound) mod bound.

    Computed wrap-free; the naive 2^w does not fit in a w-bit word.
    """
    if upper_bound < 1:
        raise ValueError("upper_bound must be >= 1")
    return ((1 << width) - upper_bound) % upper_bound


@dataclass(frozen=True)
class BoundedSpec:
    """A bounded-uniform draw: exclusive upper bound at a given word width."""

    upper_bound: int
    width: int = 32

    def __post_init__(self):
        if not 1 <= self.width <= 32:
            raise ValueError("width must be in 1..32")
        if not 0 <= self.upper_bound <= (1 << self.width):
            raise ValueError("upper_bound does not fit the word width")

    @property
    def min_accept(self):
        return min_accept(self.upper_bound, self.width)


def uniform_generic(draw, upper_bound, width=32):
    """Uniform integer in [0, upper_bound) from a w-bit word source.

    Bounds below 2 return 0 without consuming a word.
    """
    if upper_bound < 2:
        return 0
    threshold = min_accept(upper_bound, width)
    while True:
        r = draw()
        if r >= threshold:
            return r % upper_bound


def uniform(engine, upper_bound):
    """arc4random_uniform: uniform 32-bit bounded draw from an engine."""
    return uniform_generic(engine.random_u32, upper_bound, 32)


def uniform_batch(engine, upper_bound, n):
    """n bounded draws, byte-for-byte equivalent to n uniform() calls.

    Words are consumed in stream order and rejected ones skipped, which is
    exactly what the one-at-a-time loop does, so results and engine state
    match. Returns (values, words_drawn).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if upper_bound < 2:
        return np.zeros(n, dtype=np.uint32), 0
    threshold = min_accept(upper_bound, 32)
    out = np.empty(n, dtype=np.uint32)
    filled = 0
    drawn = 0
    while filled < n:
        words = engine.random_u32_batch(n - filled)
        drawn += len(words)
        accepted = words[words >= threshold] if threshold else words
        out[filled : filled + len(accepted)] = accepted % upper_bound
        filled += len(accepted)
    return out, drawn
