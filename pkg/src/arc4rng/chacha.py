"""ChaCha20 stream cipher, IETF variant (RFC 8439: 32-bit counter, 96-bit nonce).

`quarter_round` and `chacha_block` are a plain-Python reference of the block
function. `ChaCha20Stream` is the counter-advancing keystream context used by
the RNG engine; for throughput it delegates bulk block generation to the
`cryptography` package (OpenSSL), which uses the same state layout, and is
cross-checked against the reference block function in the test suite.
"""

from __future__ import annotations

import struct

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

KEY_SIZE = 32
NONCE_SIZE = 12
BLOCK_SIZE = 64
MAX_BLOCKS = 1 << 32  # 32-bit block counter

_MASK32 = 0xFFFFFFFF
_CONSTANTS = (0x61707865, 0x3320646E, 0x79622D32, 0x6B206574)


class CounterExhaustedError(Exception):
    """The 32-bit block counter would wrap; the caller must rekey instead."""


_ZEROS = bytes(1 << 16)


def _zeros(n):
    """Shared all-zero plaintext for keystream extraction via update_into."""
    global _ZEROS
    if n > len(_ZEROS):
        _ZEROS = bytes(n)
    return memoryview(_ZEROS)[:n]


def _rotl32(v, n):
    return ((v << n) & _MASK32) | (v >> (32 - n))


def quarter_round(a, b, c, d):
    """One ChaCha quarter round on four 32-bit words; returns the new words."""
    a = (a + b) & _MASK32
    d = _rotl32(d ^ a, 16)
    c = (c + d) & _MASK32
    b = _rotl32(b ^ c, 12)
    a = (a + b) & _MASK32
    d = _rotl32(d ^ a, 8)
    c = (c + d) & _MASK32
    b = _rotl32(b ^ c, 7)
    return a, b, c, d


def words_to_bytes(words):
    """Serialize sixteen 32-bit words as 64 little-endian bytes."""
    return struct.pack("<16I", *words)


def bytes_to_words(block):
    """Parse a 64-byte block into sixteen little-endian 32-bit words."""
    if len(block) != BLOCK_SIZE:
        raise ValueError(f"block must be {BLOCK_SIZE} bytes, got {len(block)}")
    return list(struct.unpack("<16I", block))


def initial_state(key, counter, nonce):
    """The 16-word ChaCha state matrix: constants, key, counter, nonce."""
    if len(key) != KEY_SIZE:
        raise ValueError(f"key must be {KEY_SIZE} bytes, got {len(key)}")
    if len(nonce) != NONCE_SIZE:
        raise ValueError(f"nonce must be {NONCE_SIZE} bytes, got {len(nonce)}")
    if not 0 <= counter < MAX_BLOCKS:
        raise ValueError("counter must fit in 32 bits")
    return (
        list(_CONSTANTS)
        + list(struct.unpack("<8I", key))
        + [counter]
        + list(struct.unpack("<3I", nonce))
    )


def chacha_block(key, counter, nonce):
    """The ChaCha20 block function: 64 keystream bytes for one counter value."""
    init = initial_state(key, counter, nonce)
    s = list(init)
    for _ in range(10):
        # column round
        s[0], s[4], s[8], s[12] = quarter_round(s[0], s[4], s[8], s[12])
        s[1], s[5], s[9], s[13] = quarter_round(s[1], s[5], s[9], s[13])
        s[2], s[6], s[10], s[14] = quarter_round(s[2], s[6], s[10], s[14])
        s[3], s[7], s[11], s[15] = quarter_round(s[3], s[7], s[11], s[15])
        # diagonal round
        s[0], s[5], s[10], s[15] = quarter_round(s[0], s[5], s[10], s[15])
        s[1], s[6], s[11], s[12] = quarter_round(s[1], s[6], s[11], s[12])
        s[2], s[7], s[8], s[13] = quarter_round(s[2], s[7], s[8], s[13])
        s[3], s[4], s[9], s[14] = quarter_round(s[3], s[4], s[9], s[14])
    return words_to_bytes((a + b) & _MASK32 for a, b in zip(s, init))


class ChaCha20Stream:
    """A keystream context owned by a single caller.

    Tracks the block counter and buffers unused bytes of the current block, so
    any sequence of request sizes consumes the keystream without gaps or
    repeats. Exceeding 2^32 blocks under one key raises CounterExhaustedError
    rather than wrapping.
    """

    def __init__(self, key, nonce, counter=0):
        initial_state(key, nonce=nonce, counter=counter)  # validate
        self.key = bytes(key)
        self.nonce = bytes(nonce)
        self.block_counter = counter
        self._partial = b""
        self._encryptor = None

    @property
    def partial(self):
        """Buffered unused keystream bytes from the current block (0-63)."""
        return self._partial

    def _backend(self):
        if self._encryptor is None:
            iv = struct.pack("<I", self.block_counter) + self.nonce
            self._encryptor = Cipher(
                algorithms.ChaCha20(self.key, iv), mode=None
            ).encryptor()
        return self._encryptor

    def _check_budget(self, nblocks):
        if self.block_counter + nblocks > MAX_BLOCKS:
            raise CounterExhaustedError(
                "32-bit ChaCha block counter exhausted; rekey required"
            )

    def keystream(self, n):
        """Return the next n keystream bytes, advancing the context."""
        if n < 0:
            raise ValueError("n must be non-negative")
        take = min(n, len(self._partial))
        out = self._partial[:take]
        self._partial = self._partial[take:]
        need = n - take
        if need == 0:
            return out
        nblocks = -(-need // BLOCK_SIZE)
        self._check_budget(nblocks)
        fresh = self._backend().update(bytes(nblocks * BLOCK_SIZE))
        self.block_counter += nblocks
        self._partial = fresh[need:]
        return out + fresh[:need]

    def keystream_into(self, view):
        """Write the next len(view) keystream bytes into a writable buffer.

        Same stream position semantics as keystream(); avoids intermediate
        copies for large requests.
        """
        n = len(view)
        take = min(n, len(self._partial))
        if take:
            view[:take] = self._partial[:take]
            self._partial = self._partial[take:]
        need = n - take
        if need == 0:
            return
        self._check_budget(-(-need // BLOCK_SIZE))
        pos = take
        full = (need // BLOCK_SIZE) * BLOCK_SIZE
        if full:
            self._backend().update_into(_zeros(full), view[pos : pos + full])
            self.block_counter += full // BLOCK_SIZE
            pos += full
            need -= full
        if need:
            last = self._backend().update(bytes(BLOCK_SIZE))
            self.block_counter += 1
            view[pos : pos + need] = last[:need]
            self._partial = last[need:]

    def xor(self, data):
        """XOR data with the next len(data) keystream bytes."""
        ks = self.keystream(len(data))
        n = len(data)
        return (
            int.from_bytes(data, "little") ^ int.from_bytes(ks, "little")
        ).to_bytes(n, "little")
