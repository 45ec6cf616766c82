"""Generation-time benchmark: fixed vs randomized rekey interval.

Times the production of 39.6M 32-bit values (about 151 MiB) under each
policy, repeats with matched seeds, and prints the two-column percent table:
"reduction in time" is relative to the reference (fixed), "increase in
performance" relative to the candidate (fuzzed).

Run: python3 demos/04_generation_benchmark.py [runs]
"""

import hashlib
import sys

from arc4rng import RekeyPolicy, SEED_SIZE
from arc4rng.bench import aggregate, compare, run_generation_bench

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 5
N = 39_600_000


def seed(i):
    return hashlib.blake2b(f"bench:{i}".encode(), digest_size=SEED_SIZE).digest()


fixed = RekeyPolicy.fixed()
fuzzed = RekeyPolicy.fuzzed()

run_generation_bench(N, fixed, seed(-1))  # warmup, untimed

fixed_runs, fuzzed_runs = [], []
for i in range(runs):
    fixed_runs.append(run_generation_bench(N, fixed, seed(i)))
    fuzzed_runs.append(run_generation_bench(N, fuzzed, seed(i)))
    print(f"run {i}: fixed {fixed_runs[-1].wall_s:.3f}s "
          f"({fixed_runs[-1].rekeys} rekeys), "
          f"fuzzed {fuzzed_runs[-1].wall_s:.3f}s "
          f"({fuzzed_runs[-1].rekeys} rekeys)")

ref = aggregate(fixed_runs)
cand = aggregate(fuzzed_runs)
print()
print(f"mean wall: fixed {ref.mean_wall_s:.4f}s, fuzzed {cand.mean_wall_s:.4f}s")
print()
print(f"{'':>6} {'reduction in time':>20} {'increase in performance':>26}")
for row in compare(ref, cand):
    print(f"{row.metric:>6} {row.reduction_pct:>19.2f}% {row.increase_pct:>25.2f}%")
print()
print("differences at this scale are timer noise: the fuzz draw adds four")
print("keystream bytes per rekey, about one part in 400,000 of the output.")
