"""Tour of the RNG engine: deterministic seeding, buffered output, and
fast-key-erasure rekeying.

Run: python3 demos/01_keystream_and_rekeying.py
"""

from arc4rng import Engine, RekeyPolicy, SEED_SIZE

seed = bytes(range(SEED_SIZE))  # 44 bytes: 32-byte key + 12-byte nonce

print("== determinism ==")
a = Engine(seed, RekeyPolicy.fixed())
b = Engine(seed, RekeyPolicy.fixed())
print("two engines, same seed:", [a.random_u32() for _ in range(4)])
print("                       ", [b.random_u32() for _ in range(4)])

print()
print("== the rekey event log ==")
e = Engine(seed, RekeyPolicy.fixed(interval=100_000))
e.random_buf(350_000)
for ev in e.events:
    print(f"  rekey #{ev.ordinal} at output byte {ev.output_offset:>7,}, "
          f"next budget {ev.interval_chosen:,} bytes")

print()
print("== key erasure ==")
print("after every rekey the buffer bytes that became the new key are zeroed,")
print("so past output cannot be recomputed from a captured state.")
snap_before = e.snapshot()
key_before = e._cipher.key
e.random_buf(100_000)  # crosses a rekey boundary
snap_after = e.snapshot()
leaked = any(
    key_before[i : i + 16] in snap_after for i in range(len(key_before) - 15)
)
print("old key fragments visible in post-rekey state:", leaked)

print()
print("== explicit reseeding ==")
from arc4rng import OsEntropy

e.reseed(OsEntropy())
print("after reseed, next value:", e.random_u32())
