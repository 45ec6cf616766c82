"""arc4random-style RNG engine: buffered keystream with fast key erasure.

The engine keeps a 1024-byte keystream buffer. Every `count` output bytes it
rekeys: the buffer is refilled from the current cipher, its first 44 bytes
become the next key+nonce and are immediately zeroed, so no copy of the new
key exists outside the cipher context and earlier output cannot be recomputed
from later state.

The rekey interval is set by a pluggable policy: a fixed byte budget
(1,600,000 by default), or a randomized one drawn from the freshly installed
key as REKEY_BASE + (fuzz % REKEY_BASE), making the interval unpredictable.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from .chacha import KEY_SIZE, NONCE_SIZE, ChaCha20Stream

SEED_SIZE = KEY_SIZE + NONCE_SIZE  # 44
BUF_SIZE = 1024

DEFAULT_FIXED_INTERVAL = 1_600_000
DEFAULT_REKEY_BASE = 1 << 20


class EntropyError(Exception):
    """A seed source failed to deliver SEED_SIZE bytes."""


@dataclass(frozen=True)
class RekeyPolicy:
    """Chooses the byte budget installed at each rekey."""

    mode: str  # "fixed" | "fuzzed"
    fixed_interval: int = DEFAULT_FIXED_INTERVAL
    rekey_base: int = DEFAULT_REKEY_BASE

    def __post_init__(self):
        if self.mode not in ("fixed", "fuzzed"):
            raise ValueError(f"unknown policy mode: {self.mode!r}")
        if self.fixed_interval <= 0:
            raise ValueError("fixed_interval must be positive")
        if self.rekey_base <= 0:
            raise ValueError("rekey_base must be positive")

    @classmethod
    def fixed(cls, interval=DEFAULT_FIXED_INTERVAL):
        return cls("fixed", fixed_interval=interval)

    @classmethod
    def fuzzed(cls, base=DEFAULT_REKEY_BASE):
        return cls("fuzzed", rekey_base=base)

    def describe(self):
        if self.mode == "fixed":
            return f"fixed({self.fixed_interval})"
        return f"fuzzed(base={self.rekey_base})"


@dataclass(frozen=True)
class RekeyEvent:
    """One rekey: which output byte it happened at and the interval chosen."""

    ordinal: int
    output_offset: int
    interval_chosen: int


EVENTS_CSV_HEADER = "ordinal,output_offset,interval_chosen"


def events_to_csv(events):
    lines = [EVENTS_CSV_HEADER]
    lines.extend(
        f"{e.ordinal},{e.output_offset},{e.interval_chosen}" for e in events
    )
    return "\n".join(lines) + "\n"


class OsEntropy:
    """Seed source backed by the platform CSPRNG."""

    def read(self):
        return os.urandom(SEED_SIZE)


class StaticEntropy:
    """Deterministic seed source for tests; yields the same bytes every time."""

    def __init__(self, data):
        self._data = bytes(data)

    def read(self):
        if len(self._data) != SEED_SIZE:
            raise EntropyError(
                f"seed source yielded {len(self._data)} bytes, need {SEED_SIZE}"
            )
        return self._data


class FailingEntropy:
    """Seed source that always fails; exercises the reseed error path."""

    def read(self):
        raise EntropyError("entropy source unavailable")


def parse_seed_hex(seed_hex):
    """Parse an 88-hex-character string into a 44-byte seed."""
    try:
        seed = bytes.fromhex(seed_hex)
    except ValueError as exc:
        raise ValueError(f"seed is not valid hex: {exc}") from None
    if len(seed) != SEED_SIZE:
        raise ValueError(
            f"seed must be {2 * SEED_SIZE} hex characters ({SEED_SIZE} bytes), "
            f"got {len(seed)} bytes"
        )
    return seed


class Engine:
    """The RNG state machine (arc4random semantics, explicit seeding).

    The output stream and the rekey-event log are deterministic functions of
    (seed, policy); request chunking changes neither.
    """

    def __init__(self, seed, policy=None, log_events=True):
        if len(seed) != SEED_SIZE:
            raise ValueError(f"seed must be {SEED_SIZE} bytes, got {len(seed)}")
        self.policy = policy if policy is not None else RekeyPolicy.fuzzed()
        self._cipher = ChaCha20Stream(seed[:KEY_SIZE], seed[KEY_SIZE:])
        self._buf = bytearray(BUF_SIZE)
        self._pos = BUF_SIZE  # buffer starts empty
        self.count = 0
        self.total_out = 0
        self.events = [] if log_events else None
        self._rekey()  # initial stir: the seed never keys output directly

    @classmethod
    def from_hex(cls, seed_hex, policy=None, **kw):
        return cls(parse_seed_hex(seed_hex), policy, **kw)

    @classmethod
    def from_source(cls, source, policy=None, **kw):
        seed = source.read()
        if len(seed) != SEED_SIZE:
            raise EntropyError(
                f"seed source yielded {len(seed)} bytes, need {SEED_SIZE}"
            )
        return cls(seed, policy, **kw)

    @property
    def have(self):
        """Unconsumed valid bytes in the buffer."""
        return BUF_SIZE - self._pos

    @property
    def rekey_count(self):
        if self.events is None:
            raise ValueError("event logging is disabled")
        return len(self.events)

    def _rekey(self):
        self._buf[:] = self._cipher.keystream(BUF_SIZE)
        self._cipher = ChaCha20Stream(
            bytes(self._buf[:KEY_SIZE]),
            bytes(self._buf[KEY_SIZE:SEED_SIZE]),
        )
        self._buf[:SEED_SIZE] = bytes(SEED_SIZE)  # key erasure
        self._pos = SEED_SIZE
        self.count = self._next_interval()
        if self.events is not None:
            self.events.append(
                RekeyEvent(len(self.events), self.total_out, self.count)
            )

    def _next_interval(self):
        if self.policy.mode == "fixed":
            return self.policy.fixed_interval
        # Fuzz word drawn from the freshly installed key's stream.
        fuzz = struct.unpack("<I", self._cipher.xor(bytes(4)))[0]
        return self.policy.rekey_base + fuzz % self.policy.rekey_base

    def _serve_into(self, view):
        """Fill view from the buffer/keystream without touching the budget."""
        pos = 0
        m = len(view)
        while m:
            have = BUF_SIZE - self._pos
            if have:
                take = min(have, m)
                view[pos : pos + take] = self._buf[self._pos : self._pos + take]
                self._pos += take
                pos += take
                m -= take
            elif m >= BUF_SIZE:
                # Large remainder: serve straight from the keystream. The byte
                # stream is identical to staging through the buffer.
                self._cipher.keystream_into(view[pos : pos + m])
                pos += m
                m = 0
            else:
                self._buf[:] = self._cipher.keystream(BUF_SIZE)
                self._pos = 0

    def _fill(self, view):
        """Fill view with output, rekeying at every budget exhaustion.

        The rekey fires at the exact output byte where the budget hits zero,
        even mid-request, so the output stream and the event log depend only
        on (seed, policy), never on how requests are chunked.
        """
        pos = 0
        remaining = len(view)
        while remaining:
            m = min(remaining, self.count)
            self._serve_into(view[pos : pos + m])
            self.count -= m
            self.total_out += m
            pos += m
            remaining -= m
            if self.count <= 0:
                self._rekey()

    def random_buf(self, n):
        """Return n random bytes, rekeying whenever the byte budget is spent."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return b""
        out = bytearray(n)
        self._fill(memoryview(out))
        return bytes(out)

    def random_u32(self):
        """One uniformly distributed 32-bit value; never fails."""
        return struct.unpack("<I", self.random_buf(4))[0]

    def random_u32_batch(self, n):
        """n little-endian 32-bit values; identical to n random_u32() calls."""
        if n < 0:
            raise ValueError("n must be non-negative")
        out = bytearray(4 * n)
        self._fill(memoryview(out))
        return np.frombuffer(out, dtype="<u4")

    def discard(self, n):
        """Consume n output bytes without materializing them all at once
        (same accounting as one random_buf(n) call)."""
        if n < 0:
            raise ValueError("n must be non-negative")
        scratch = bytearray(min(n, 1 << 20))
        view = memoryview(scratch)
        while n:
            take = min(n, len(scratch))
            self._fill(view[:take])
            n -= take

    def reseed(self, source):
        """Mix fresh entropy into the key by XOR, then force a rekey.

        On source failure the error propagates and the engine keeps working
        with its current key.
        """
        fresh = source.read()
        if len(fresh) != SEED_SIZE:
            raise EntropyError(
                f"seed source yielded {len(fresh)} bytes, need {SEED_SIZE}"
            )
        key = bytes(a ^ b for a, b in zip(self._cipher.key, fresh[:KEY_SIZE]))
        nonce = bytes(
            a ^ b for a, b in zip(self._cipher.nonce, fresh[KEY_SIZE:])
        )
        self._cipher = ChaCha20Stream(key, nonce)
        self._rekey()

    def snapshot(self):
        """Serialize the secret-bearing state (for key-erasure checks)."""
        return (
            self._cipher.key
            + self._cipher.nonce
            + struct.pack("<I", self._cipher.block_counter)
            + self._cipher.partial
            + bytes(self._buf)
        )

    def events_csv(self):
        if self.events is None:
            raise ValueError("event logging is disabled")
        return events_to_csv(self.events)
